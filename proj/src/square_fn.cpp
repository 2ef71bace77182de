#include "phl/square_fn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft_engine.hpp"

namespace phl {

using detail::FftDirection;

namespace {

using Poly = std::vector<double>;

Poly derivative(const Poly& p)
{
    if (p.size() <= 1)
        return {0.0};
    Poly d(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k)
        d[k - 1] = static_cast<double>(k) * p[k];
    return d;
}

Poly multiply(const Poly& a, const Poly& b)
{
    Poly c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

Poly add(Poly a, const Poly& b)
{
    if (a.size() < b.size())
        a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] += b[i];
    return a;
}

// d^k/dx^k exp(-1/u), u = 1 - x^2, equals P_k(x) u^(-2k) exp(-1/u) with
// P_{k+1} = u^2 P_k' + 4 k x u P_k - 2 x P_k.
Poly bump_derivative_numerator(int order)
{
    const Poly u{1.0, 0.0, -1.0};
    const Poly u2 = multiply(u, u);
    Poly p{1.0};
    for (int k = 0; k < order; ++k) {
        Poly t1 = multiply(u2, derivative(p));
        Poly t2 = multiply(multiply(Poly{0.0, 4.0 * k}, u), p);
        Poly t3 = multiply(Poly{0.0, -2.0}, p);
        p = add(add(t1, t2), t3);
    }
    return p;
}

double moment(const Field& psi, int k, bool absolute)
{
    const auto& g = psi.grid();
    double s = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        double term = std::pow(g.coord(0, j), k) * psi[j].real();
        s += absolute ? std::abs(term) : term;
    }
    return s * g.spacing(0);
}

// Periodic window sum along `axis`: out[i] = h * sum_{|m| <= M} in[i + m].
void box_filter(std::vector<double>& data, const GridSpec& g, int axis, std::size_t radius)
{
    const std::size_t n = g.n(axis);
    const std::size_t stride = g.stride(axis);
    const double h = g.spacing(axis);
    const std::size_t width = 2 * radius + 1;
    const std::size_t full = width / n;
    const std::size_t rest = width % n;
    std::vector<double> line(n), prefix(2 * n + 1), out(n);
    for (std::size_t base = 0; base < data.size(); ++base) {
        if ((base / stride) % n != 0)
            continue;
        for (std::size_t k = 0; k < n; ++k)
            line[k] = data[base + k * stride];
        prefix[0] = 0.0;
        for (std::size_t k = 0; k < 2 * n; ++k)
            prefix[k + 1] = prefix[k] + line[k % n];
        const double total = prefix[n];
        const std::size_t offset = n - radius % n; // start of window i - radius, shifted to be >= 0
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t start = (i + offset) % n;
            double partial = prefix[start + rest] - prefix[start];
            out[i] = h * (static_cast<double>(full) * total + partial);
        }
        for (std::size_t k = 0; k < n; ++k)
            data[base + k * stride] = out[k];
    }
}

class AreaSweep {
public:
    AreaSweep(const GridSpec& g, const AnalyzingWavelet& psi, const ConeQuadrature& quad)
        : g_(g), apertures_(quad.apertures()), weights_(quad.weights())
    {
        for (int i = 0; i < g.dim(); ++i) {
            const std::size_t n = g.n(i);
            for (double rho : apertures_) {
                std::vector<double> m(n);
                // psi is even, so psi_hat(rho xi) depends on |k| only.
                std::vector<double> half(n / 2 + 1);
                for (std::size_t k = 0; k <= n / 2; ++k)
                    half[k] = psi.fourier(rho * static_cast<double>(k) * g.frequency_step(i));
                for (std::size_t k = 0; k < n; ++k)
                    m[k] = half[static_cast<std::size_t>(std::abs(g.freq_index(i, k)))];
                multipliers_[i].push_back(std::move(m));
                radii_[i].push_back(ConeQuadrature::shift_radius(rho, g.spacing(i)));
            }
        }
        norm_ = 1.0 / static_cast<double>(g.size());
    }

    std::vector<double> run(const std::vector<cplx>& spectrum) { return descend(spectrum, 0); }

private:
    std::vector<double> descend(const std::vector<cplx>& buf, int axis)
    {
        std::vector<double> total(buf.size(), 0.0);
        for (std::size_t r = 0; r < apertures_.size(); ++r) {
            std::vector<cplx> next(buf);
            const auto& m = multipliers_[axis][r];
            for (std::size_t flat = 0; flat < next.size(); ++flat)
                next[flat] *= m[(flat / g_.stride(axis)) % g_.n(axis)];
            int axes[] = {axis};
            detail::fft_axes(next, g_, axes, FftDirection::backward);

            std::vector<double> level;
            if (axis == g_.dim() - 1) {
                level.resize(next.size());
                for (std::size_t k = 0; k < next.size(); ++k)
                    level[k] = std::norm(next[k] * norm_);
            } else {
                level = descend(next, axis + 1);
            }
            box_filter(level, g_, axis, radii_[axis][r]);
            for (std::size_t k = 0; k < total.size(); ++k)
                total[k] += weights_[r] * level[k];
        }
        return total;
    }

    const GridSpec& g_;
    std::vector<double> apertures_;
    std::vector<double> weights_;
    std::array<std::vector<std::vector<double>>, kMaxDim> multipliers_;
    std::array<std::vector<std::size_t>, kMaxDim> radii_;
    double norm_;
};

} // namespace

double AnalyzingWavelet::value(double x) const
{
    double x2 = x * x;
    if (x2 >= 1.0)
        return 0.0;
    double u = 1.0 - x2;
    double poly = 0.0;
    for (auto it = even_coeffs_.rbegin(); it != even_coeffs_.rend(); ++it)
        poly = poly * x2 + *it;
    double log_factor = -1.0 / u - 2.0 * derivative_order_ * std::log(u);
    return scale_ * poly * std::exp(log_factor);
}

double AnalyzingWavelet::fourier(double zeta) const
{
    const auto& g = samples_.grid();
    double s = 0.0;
    for (std::size_t j = 0; j < samples_.size(); ++j)
        s += samples_[j].real() * std::cos(2.0 * std::numbers::pi * g.coord(0, j) * zeta);
    return s * g.spacing(0);
}

AnalyzingWavelet build_psi(int order, std::size_t resolution)
{
    if (order < 0)
        throw std::invalid_argument("build_psi: moment order must be >= 0");
    AnalyzingWavelet psi;
    psi.order_ = order;
    psi.derivative_order_ = (order + 1) % 2 == 0 ? order + 1 : order + 2;

    Poly p = bump_derivative_numerator(psi.derivative_order_);
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k % 2 == 1) {
            if (p[k] != 0.0)
                throw std::logic_error("build_psi: even derivative produced an odd coefficient");
            continue;
        }
        psi.even_coeffs_.push_back(p[k]);
    }

    GridSpec g = make_grid(1, resolution, 1.0);
    std::vector<double> v(g.n(0));
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = psi.value(g.coord(0, j));
    double peak = 0.0;
    for (double x : v)
        peak = std::max(peak, std::abs(x));
    if (!(peak > 0.0))
        throw std::runtime_error("build_psi: sampled wavelet vanishes identically");
    psi.scale_ = 1.0 / peak;
    for (auto& x : v)
        x *= psi.scale_;
    psi.samples_ = Field::from_real(g, std::move(v));

    for (int k = 0; k <= order; ++k) {
        double signed_m = moment(psi.samples_, k, false);
        double abs_m = moment(psi.samples_, k, true);
        if (std::abs(signed_m) > 1e-8 * abs_m)
            throw std::runtime_error("build_psi: moment " + std::to_string(k) + " does not vanish ("
                                     + std::to_string(signed_m) + ")");
    }
    for (std::size_t j = 0; j < psi.samples_.size(); ++j)
        if (psi.samples_[j] != psi.samples_[psi.samples_.size() - 1 - j])
            throw std::runtime_error("build_psi: sampled wavelet is not even");
    return psi;
}

ConeQuadrature::ConeQuadrature(int j_min, int j_max) : j_min_(j_min), j_max_(j_max)
{
    if (j_min > j_max)
        throw std::invalid_argument("cone quadrature needs j_min <= j_max");
}

ConeQuadrature ConeQuadrature::covering(const GridSpec& grid)
{
    auto lo = static_cast<int>(std::floor(std::log2(grid.min_spacing())));
    auto hi = static_cast<int>(std::ceil(std::log2(grid.max_half_width())));
    return ConeQuadrature(lo, hi);
}

std::vector<double> ConeQuadrature::apertures() const
{
    std::vector<double> a;
    for (int j = j_min_; j <= j_max_; ++j)
        a.push_back(std::exp2(j));
    return a;
}

std::vector<double> ConeQuadrature::weights() const
{
    std::vector<double> w;
    for (double rho : apertures())
        w.push_back(std::numbers::ln2 / rho);
    return w;
}

std::size_t ConeQuadrature::shift_radius(double rho, double h)
{
    double r = std::ceil(rho / h) - 1.0;
    return r > 0.0 ? static_cast<std::size_t>(r) : 0;
}

Field s_function(const Field& f, const AnalyzingWavelet& psi, const ConeQuadrature& quad)
{
    const auto& g = f.grid();
    std::vector<cplx> spectrum(f.values().begin(), f.values().end());
    detail::fft_all(spectrum, g, FftDirection::forward);
    auto sq = AreaSweep(g, psi, quad).run(spectrum);
    for (auto& v : sq)
        v = std::sqrt(v);
    return Field::from_real(g, std::move(sq));
}

double sq_norm_estimate(const Field& f, double p, const AnalyzingWavelet& psi, const ConeQuadrature& quad)
{
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("sq_norm_estimate: p must lie in (0, 1]");
    if (psi.order() < moment_order(p))
        throw std::invalid_argument("sq_norm_estimate: analyzing wavelet cancels " + std::to_string(psi.order())
                                    + " moments, p = " + std::to_string(p) + " needs "
                                    + std::to_string(moment_order(p)));
    return lp_quasinorm(s_function(f, psi, quad), p);
}

} // namespace phl
