#include "phl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace phl {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_finite(cplx v, std::size_t index)
{
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument("non-finite field value at index " + std::to_string(index));
}

} // namespace

GridSpec make_grid(int d, std::span<const std::size_t> n, std::span<const double> half_width)
{
    if (d < 1 || d > kMaxDim)
        throw std::invalid_argument("grid dimension must be 1, 2 or 3, got " + std::to_string(d));
    if (n.size() != static_cast<std::size_t>(d) || half_width.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("grid needs exactly d sample counts and d half-widths");

    GridSpec g;
    g.dim_ = d;
    for (int i = 0; i < d; ++i) {
        if (!is_power_of_two(n[i]) || n[i] < 16)
            throw std::invalid_argument("axis " + std::to_string(i) + ": sample count "
                                        + std::to_string(n[i]) + " is not a power of two >= 16");
        if (!(half_width[i] > 0.0) || !std::isfinite(half_width[i]))
            throw std::invalid_argument("axis " + std::to_string(i) + ": half-width must be positive");
        g.n_[i] = n[i];
        g.half_width_[i] = half_width[i];
        g.spacing_[i] = 2.0 * half_width[i] / static_cast<double>(n[i]);
    }
    std::size_t stride = 1;
    for (int i = d - 1; i >= 0; --i) {
        g.stride_[i] = stride;
        stride *= g.n_[i];
    }
    g.size_ = stride;
    return g;
}

GridSpec make_grid(int d, std::size_t n, double half_width)
{
    std::vector<std::size_t> ns(static_cast<std::size_t>(std::max(d, 0)), n);
    std::vector<double> ls(ns.size(), half_width);
    return make_grid(d, ns, ls);
}

double GridSpec::cell_volume() const
{
    double v = 1.0;
    for (int i = 0; i < dim_; ++i)
        v *= spacing_[i];
    return v;
}

double GridSpec::min_spacing() const
{
    return *std::min_element(spacing_.begin(), spacing_.begin() + dim_);
}

double GridSpec::max_half_width() const
{
    return *std::max_element(half_width_.begin(), half_width_.begin() + dim_);
}

std::array<std::size_t, kMaxDim> GridSpec::unflatten(std::size_t flat) const
{
    std::array<std::size_t, kMaxDim> idx{};
    for (int i = 0; i < dim_; ++i) {
        idx[i] = flat / stride_[i];
        flat %= stride_[i];
    }
    return idx;
}

Field::Field(GridSpec grid, std::vector<cplx> values, ScalarKind kind)
    : grid_(std::move(grid)), values_(std::move(values)), kind_(kind)
{
    if (values_.size() != grid_.size())
        throw std::invalid_argument("field has " + std::to_string(values_.size())
                                    + " values, grid expects " + std::to_string(grid_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i)
        require_finite(values_[i], i);
}

Field Field::zeros(const GridSpec& grid, ScalarKind kind)
{
    return Field(grid, std::vector<cplx>(grid.size()), kind);
}

Field Field::from_real(const GridSpec& grid, std::vector<double> values)
{
    std::vector<cplx> v(values.begin(), values.end());
    return Field(grid, std::move(v), ScalarKind::real);
}

Field Field::from_complex(const GridSpec& grid, std::vector<cplx> values)
{
    return Field(grid, std::move(values), ScalarKind::complex);
}

std::vector<double> Field::real_part() const
{
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](cplx v) { return v.real(); });
    return out;
}

std::vector<double> Field::imag_part() const
{
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](cplx v) { return v.imag(); });
    return out;
}

Field Field::to_real() const { return from_real(grid_, real_part()); }

Field Field::scaled(cplx c) const
{
    std::vector<cplx> v(values_);
    for (auto& x : v)
        x *= c;
    bool real = is_real() && c.imag() == 0.0;
    if (real)
        for (auto& x : v)
            x.imag(0.0);
    return Field(grid_, std::move(v), real ? ScalarKind::real : ScalarKind::complex);
}

Field Field::operator+(const Field& other) const
{
    if (!(grid_ == other.grid_))
        throw std::invalid_argument("field grids differ");
    std::vector<cplx> v(values_);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] += other.values_[i];
    bool real = is_real() && other.is_real();
    return Field(grid_, std::move(v), real ? ScalarKind::real : ScalarKind::complex);
}

Field Field::operator-(const Field& other) const { return *this + other.scaled(-1.0); }

Field Field::reflected() const
{
    std::vector<cplx> v(values_.size());
    for (std::size_t flat = 0; flat < v.size(); ++flat) {
        auto idx = grid_.unflatten(flat);
        std::size_t target = 0;
        for (int i = 0; i < grid_.dim(); ++i)
            target += (grid_.n(i) - 1 - idx[i]) * grid_.stride(i);
        v[target] = values_[flat];
    }
    return Field(grid_, std::move(v), kind_);
}

cplx Field::integral() const
{
    cplx s = 0.0;
    for (auto v : values_)
        s += v;
    return s * grid_.cell_volume();
}

Field sample_fn(const GridSpec& grid, const PointFunction& f)
{
    std::vector<double> values(grid.size());
    std::array<double, kMaxDim> x{};
    for (std::size_t flat = 0; flat < values.size(); ++flat) {
        auto idx = grid.unflatten(flat);
        for (int i = 0; i < grid.dim(); ++i)
            x[i] = grid.coord(i, idx[i]);
        values[flat] = f(std::span<const double>(x.data(), static_cast<std::size_t>(grid.dim())));
    }
    return Field::from_real(grid, std::move(values));
}

Field sample_complex_fn(const GridSpec& grid, const ComplexPointFunction& f)
{
    std::vector<cplx> values(grid.size());
    std::array<double, kMaxDim> x{};
    for (std::size_t flat = 0; flat < values.size(); ++flat) {
        auto idx = grid.unflatten(flat);
        for (int i = 0; i < grid.dim(); ++i)
            x[i] = grid.coord(i, idx[i]);
        values[flat] = f(std::span<const double>(x.data(), static_cast<std::size_t>(grid.dim())));
    }
    return Field::from_complex(grid, std::move(values));
}

Field tensor_product(const GridSpec& grid, std::span<const Field> factors)
{
    if (factors.size() != static_cast<std::size_t>(grid.dim()))
        throw std::invalid_argument("tensor_product needs one factor per axis");
    bool real = true;
    for (int i = 0; i < grid.dim(); ++i) {
        const auto& g = factors[i].grid();
        if (g.dim() != 1 || g.n(0) != grid.n(i) || g.half_width(0) != grid.half_width(i))
            throw std::invalid_argument("tensor factor " + std::to_string(i) + " does not match grid axis");
        real = real && factors[i].is_real();
    }
    std::vector<cplx> v(grid.size());
    for (std::size_t flat = 0; flat < v.size(); ++flat) {
        auto idx = grid.unflatten(flat);
        cplx prod = 1.0;
        for (int i = 0; i < grid.dim(); ++i)
            prod *= factors[i][idx[i]];
        v[flat] = prod;
    }
    if (real) {
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            r[i] = v[i].real();
        return Field::from_real(grid, std::move(r));
    }
    return Field::from_complex(grid, std::move(v));
}

double lp_quasinorm(const Field& f, double p)
{
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("lp_quasinorm: exponent must be positive");
    double s = 0.0;
    for (auto v : f.values())
        s += std::pow(std::abs(v), p);
    return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

Exponents::Exponents(double p, double alpha, int d) : p_(p), alpha_(alpha), d_(d)
{
    if (!(p > 0.0))
        throw std::invalid_argument("exponent p must be positive");
    if (d < 1 || d > kMaxDim)
        throw std::invalid_argument("dimension must be 1, 2 or 3");
    if (!(alpha > 0.0 && alpha < d))
        throw std::invalid_argument("fractional order alpha must lie in (0, d)");
    double inv_q = 1.0 / p - alpha / d;
    if (!(inv_q > 0.0))
        throw std::invalid_argument("incompatible exponents: 1/p - alpha/d must be positive");
    q_ = 1.0 / inv_q;
}

int moment_order(double p)
{
    if (!(p > 0.0))
        throw std::invalid_argument("moment_order: p must be positive");
    return static_cast<int>(std::floor(1.0 / p - 1.0 + 1e-12));
}

} // namespace phl
