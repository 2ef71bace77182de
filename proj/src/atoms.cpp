#include "phl/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace phl {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Portable uniform double in [-1, 1) from a 64-bit engine.
double symmetric_unit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

constexpr int kProfileModes = 6;

// Orthogonalizes `values` (restricted to `idx`) against 1, u, ..., u^degree on
// those samples, u the coordinate rescaled to [-1, 1].
void project_out_polynomials(std::vector<double>& values, const std::vector<double>& u, int degree)
{
    const std::size_t m = u.size();
    std::vector<std::vector<double>> basis;
    for (int q = 0; q <= degree; ++q) {
        std::vector<double> v(m);
        for (std::size_t j = 0; j < m; ++j)
            v[j] = std::pow(u[j], q);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                double dot = 0.0;
                for (std::size_t j = 0; j < m; ++j)
                    dot += b[j] * v[j];
                for (std::size_t j = 0; j < m; ++j)
                    v[j] -= dot * b[j];
            }
        double nrm = 0.0;
        for (double x : v)
            nrm += x * x;
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0))
            throw std::runtime_error("atom projection: polynomial basis is degenerate on the support");
        for (auto& x : v)
            x /= nrm;
        basis.push_back(std::move(v));
    }
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) {
            double dot = 0.0;
            for (std::size_t j = 0; j < m; ++j)
                dot += b[j] * values[j];
            for (std::size_t j = 0; j < m; ++j)
                values[j] -= dot * b[j];
        }
}

// Moment-free, sup-normalized profile on the samples of `axis_grid` within
// |x - center| < radius; returns the full line (zero elsewhere).
std::vector<double> cancelled_profile(const GridSpec& axis_grid, double center, double radius, int degree,
                                      std::uint64_t seed)
{
    std::vector<std::size_t> idx;
    std::vector<double> u;
    for (std::size_t j = 0; j < axis_grid.n(0); ++j) {
        double x = axis_grid.coord(0, j);
        if (std::abs(x - center) < radius) {
            idx.push_back(j);
            u.push_back((x - center) / radius);
        }
    }
    if (idx.size() < static_cast<std::size_t>(degree) + 2)
        throw std::invalid_argument("atom support holds " + std::to_string(idx.size())
                                    + " samples, too few to cancel moments up to order " + std::to_string(degree));

    std::mt19937_64 rng(seed);
    std::array<double, kProfileModes> coeff{};
    for (auto& c : coeff)
        c = symmetric_unit(rng);

    std::vector<double> vals(idx.size());
    double raw_peak = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        double s = 0.0;
        for (int k = 0; k < kProfileModes; ++k)
            s += coeff[k] * std::sin((k + 1) * std::numbers::pi * (u[j] + 1.0) / 2.0);
        vals[j] = s;
        raw_peak = std::max(raw_peak, std::abs(s));
    }
    project_out_polynomials(vals, u, degree);
    double peak = 0.0;
    for (double v : vals)
        peak = std::max(peak, std::abs(v));
    if (!(peak > 1e-12 * raw_peak) || !(peak > 0.0))
        throw std::runtime_error("atom profile degenerated to zero after moment projection");

    std::vector<double> line(axis_grid.n(0), 0.0);
    for (std::size_t j = 0; j < idx.size(); ++j)
        line[idx[j]] = vals[j] / peak;
    return line;
}

GridSpec axis_grid(const GridSpec& g, int axis)
{
    std::size_t n[] = {g.n(axis)};
    double L[] = {g.half_width(axis)};
    return make_grid(1, n, L);
}

double l2_squared(const Field& f)
{
    double s = 0.0;
    for (auto v : f.values())
        s += std::norm(v);
    return s * f.grid().cell_volume();
}

void check_p(double p)
{
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("atom exponent p must lie in (0, 1]");
}

} // namespace

double Rectangle::volume() const
{
    double v = 1.0;
    for (int i = 0; i < dim; ++i)
        v *= side[i];
    return v;
}

bool Rectangle::contains(std::span<const double> x) const
{
    for (int i = 0; i < dim; ++i)
        if (x[i] < lo[i] || x[i] >= lo[i] + side[i])
            return false;
    return true;
}

bool Rectangle::overlaps(const Rectangle& other) const
{
    if (dim != other.dim)
        throw std::invalid_argument("rectangles of different dimension");
    for (int i = 0; i < dim; ++i)
        if (!(lo[i] < other.lo[i] + other.side[i] && other.lo[i] < lo[i] + side[i]))
            return false;
    return true;
}

bool Rectangle::is_dyadic() const
{
    for (int i = 0; i < dim; ++i) {
        int e;
        double mant = std::frexp(side[i], &e);
        if (mant != 0.5)
            return false;
        double k = lo[i] / side[i];
        if (k != std::floor(k))
            return false;
    }
    return true;
}

Rectangle Rectangle::dyadic(std::span<const int> exponents, std::span<const long> k)
{
    if (exponents.size() != k.size() || exponents.empty() || exponents.size() > kMaxDim)
        throw std::invalid_argument("dyadic rectangle needs matching exponent and position lists");
    Rectangle r;
    r.dim = static_cast<int>(exponents.size());
    for (int i = 0; i < r.dim; ++i) {
        r.side[i] = std::exp2(exponents[i]);
        r.lo[i] = static_cast<double>(k[i]) * r.side[i];
    }
    return r;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

void require_central_half(const Rectangle& r, const GridSpec& grid)
{
    if (r.dim != grid.dim())
        throw std::invalid_argument("rectangle dimension does not match grid");
    for (int i = 0; i < r.dim; ++i) {
        if (!(r.side[i] > 0.0))
            throw std::invalid_argument("rectangle sides must be positive");
        double half = grid.half_width(i) / 2.0;
        if (r.lo[i] < -half || r.lo[i] + r.side[i] > half)
            throw std::invalid_argument("rectangle leaves the central half of the domain along axis "
                                        + std::to_string(i));
    }
}

Field make_hp_atom_1d(const AtomSpec1D& spec, const GridSpec& grid)
{
    check_p(spec.p);
    if (grid.dim() != 1)
        throw std::invalid_argument("make_hp_atom_1d: grid must be one-dimensional");
    if (!(spec.radius > 0.0))
        throw std::invalid_argument("make_hp_atom_1d: radius must be positive");
    if (std::abs(spec.center) + spec.radius > grid.half_width(0) / 2.0)
        throw std::invalid_argument("make_hp_atom_1d: interval leaves the central half of the domain");

    auto line = cancelled_profile(grid, spec.center, spec.radius, moment_order(spec.p), spec.seed);
    double bound = std::pow(2.0 * spec.radius, -1.0 / spec.p);
    for (auto& v : line)
        v *= bound;
    return Field::from_real(grid, std::move(line));
}

Field make_rect_atom(double p, const Rectangle& rect, std::span<const std::uint64_t> axis_seeds,
                     const GridSpec& grid)
{
    check_p(p);
    require_central_half(rect, grid);
    if (axis_seeds.size() != static_cast<std::size_t>(grid.dim()))
        throw std::invalid_argument("make_rect_atom: need one seed per axis");
    const int degree = moment_order(p);
    std::vector<Field> factors;
    for (int i = 0; i < grid.dim(); ++i) {
        auto g1 = axis_grid(grid, i);
        double c = rect.lo[i] + rect.side[i] / 2.0;
        factors.push_back(Field::from_real(g1, cancelled_profile(g1, c, rect.side[i] / 2.0, degree, axis_seeds[i])));
    }
    Field a = tensor_product(grid, factors);
    double target = std::pow(rect.volume(), 1.0 - 2.0 / p);
    return a.scaled(std::sqrt(target / l2_squared(a)));
}

std::vector<std::uint64_t> cf_rectangle_seeds(std::uint64_t seed, std::size_t index, int dim)
{
    std::vector<std::uint64_t> s;
    auto base = derive_seed(seed, index + 1);
    for (int i = 0; i < dim; ++i)
        s.push_back(derive_seed(base, static_cast<std::uint64_t>(i)));
    return s;
}

Field make_cf_atom(const CFAtomSpec& spec, const GridSpec& grid)
{
    check_p(spec.p);
    if (spec.rectangles.empty())
        throw std::invalid_argument("make_cf_atom: need at least one rectangle");
    for (std::size_t i = 0; i < spec.rectangles.size(); ++i) {
        if (!spec.rectangles[i].is_dyadic())
            throw std::invalid_argument("make_cf_atom: rectangle " + std::to_string(i) + " is not dyadic");
        for (std::size_t j = 0; j < i; ++j)
            if (spec.rectangles[i].overlaps(spec.rectangles[j]))
                throw std::invalid_argument("make_cf_atom: rectangles " + std::to_string(j) + " and "
                                            + std::to_string(i) + " overlap");
    }

    std::mt19937_64 rng(derive_seed(spec.seed, 0));
    Field sum = Field::zeros(grid);
    double budget_used = 0.0;
    double omega = 0.0;
    for (std::size_t i = 0; i < spec.rectangles.size(); ++i) {
        const auto& r = spec.rectangles[i];
        double w = spec.rectangles.size() == 1 ? 1.0 : 0.75 + 0.5 * symmetric_unit(rng);
        Field a_r = make_rect_atom(spec.p, r, cf_rectangle_seeds(spec.seed, i, grid.dim()), grid).scaled(w);
        budget_used += l2_squared(a_r);
        omega += r.volume();
        sum = sum + a_r;
    }
    double target = std::pow(omega, 1.0 - 2.0 / spec.p);
    return sum.scaled(std::sqrt(target / budget_used));
}

Field counterexample_field(const GridSpec& grid)
{
    if (grid.dim() != 1)
        throw std::invalid_argument("counterexample_field: grid must be one-dimensional");
    if (grid.half_width(0) / 2.0 < 2.0)
        throw std::invalid_argument("counterexample_field: central half of the domain must contain [0, 2]");
    return sample_fn(grid, [](std::span<const double> x) {
        if (x[0] > 0.0 && x[0] <= 1.0)
            return 1.0;
        if (x[0] > 1.0 && x[0] <= 2.0)
            return -1.0;
        return 0.0;
    });
}

} // namespace phl
