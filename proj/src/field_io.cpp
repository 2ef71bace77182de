#include "phl/field_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace phl {

namespace {

constexpr std::array<char, 4> kMagic{'P', 'H', 'L', '1'};

template <typename T>
void put_le(std::ostream& out, T value)
{
    static_assert(std::is_trivially_copyable_v<T>);
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& in)
{
    std::array<unsigned char, sizeof(T)> bytes;
    in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T));
    if (!in)
        throw std::runtime_error("field file truncated");
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

} // namespace

void write_field(std::ostream& out, const Field& f)
{
    const auto& g = f.grid();
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
    for (int i = 0; i < g.dim(); ++i)
        put_le<std::uint32_t>(out, static_cast<std::uint32_t>(g.n(i)));
    for (int i = 0; i < g.dim(); ++i)
        put_le<double>(out, g.half_width(i));
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(f.kind()));
    for (auto v : f.values()) {
        put_le<double>(out, v.real());
        if (!f.is_real())
            put_le<double>(out, v.imag());
    }
    if (!out)
        throw std::runtime_error("failed writing field data");
}

Field read_field(std::istream& in)
{
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic)
        throw std::runtime_error("not a PHL1 field file");
    auto d = static_cast<int>(get_le<std::uint32_t>(in));
    if (d < 1 || d > kMaxDim)
        throw std::runtime_error("field file has unsupported dimension " + std::to_string(d));
    std::vector<std::size_t> n(d);
    std::vector<double> L(d);
    for (auto& x : n)
        x = get_le<std::uint32_t>(in);
    for (auto& x : L)
        x = get_le<double>(in);
    auto kind = get_le<std::uint8_t>(in);
    if (kind > 1)
        throw std::runtime_error("field file has unknown scalar kind");
    GridSpec grid = make_grid(d, n, L);
    if (kind == 0) {
        std::vector<double> v(grid.size());
        for (auto& x : v)
            x = get_le<double>(in);
        return Field::from_real(grid, std::move(v));
    }
    std::vector<cplx> v(grid.size());
    for (auto& x : v) {
        double re = get_le<double>(in);
        double im = get_le<double>(in);
        x = {re, im};
    }
    return Field::from_complex(grid, std::move(v));
}

void write_field(const std::filesystem::path& path, const Field& f)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_field(out, f);
}

Field read_field(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    try {
        return read_field(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

} // namespace phl
