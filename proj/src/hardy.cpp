#include "phl/hardy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft_engine.hpp"
#include "phl/spectral.hpp"

namespace phl {

using detail::FftDirection;

ScaleLadder::ScaleLadder(int j_min, int j_max, int substeps) : j_min_(j_min), j_max_(j_max), substeps_(substeps)
{
    if (j_min >= j_max)
        throw std::invalid_argument("scale ladder needs j_min < j_max");
    if (substeps < 1)
        throw std::invalid_argument("scale ladder needs at least one step per octave");
}

ScaleLadder ScaleLadder::covering(const GridSpec& grid, int substeps)
{
    auto lo = static_cast<int>(std::floor(std::log2(grid.min_spacing())));
    auto hi = static_cast<int>(std::ceil(std::log2(grid.max_half_width())));
    if (hi <= lo)
        hi = lo + 1;
    return ScaleLadder(lo, hi, substeps);
}

std::vector<double> ScaleLadder::scales() const
{
    std::vector<double> s;
    for (int j = j_min_ * substeps_; j <= j_max_ * substeps_; ++j)
        s.push_back(std::exp2(static_cast<double>(j) / substeps_));
    return s;
}

void ScaleLadder::validate_for(const GridSpec& grid) const
{
    if (std::exp2(j_min_) > grid.min_spacing())
        throw std::invalid_argument("scale ladder does not reach down to the grid spacing (2^"
                                    + std::to_string(j_min_) + " > h)");
    if (std::exp2(j_max_) < grid.max_half_width())
        throw std::invalid_argument("scale ladder does not reach the domain half-width (2^" + std::to_string(j_max_)
                                    + " < L)");
}

namespace {

std::vector<double> poisson_axis_factor(const GridSpec& g, int axis, double t)
{
    std::vector<double> m(g.n(axis));
    for (std::size_t k = 0; k < m.size(); ++k)
        m[k] = std::exp(-2.0 * std::numbers::pi * t * std::abs(g.frequency(axis, k)));
    return m;
}

// Nested per-axis sweep over scale tuples. `buf` is in frequency along axes
// >= axis and in space along axes < axis (unnormalized DFT).
class MaximalSweep {
public:
    MaximalSweep(const GridSpec& g, std::vector<double> scales, MaximalMode mode, std::vector<double>& acc)
        : g_(g), scales_(std::move(scales)), mode_(mode), acc_(acc)
    {
        for (int i = 0; i < g.dim(); ++i)
            for (double t : scales_)
                factors_[i].push_back(poisson_axis_factor(g, i, t));
        norm_ = 1.0 / static_cast<double>(g.size());
    }

    void run(const std::vector<cplx>& spectrum) { descend(spectrum, 0, 0, false); }

private:
    void descend(const std::vector<cplx>& buf, int axis, std::size_t first_choice, bool any_nonzero)
    {
        for (std::size_t s = 0; s < scales_.size(); ++s) {
            if (mode_ == MaximalMode::radial && axis > 0 && s != first_choice)
                continue;
            bool nonzero = any_nonzero || scales_[s] > 0.0;
            if (axis == g_.dim() - 1 && !nonzero)
                continue; // the identity tuple is |f| itself
            std::vector<cplx> next(buf);
            if (scales_[s] > 0.0) {
                const auto& fac = factors_[axis][s];
                for (std::size_t flat = 0; flat < next.size(); ++flat)
                    next[flat] *= fac[(flat / g_.stride(axis)) % g_.n(axis)];
            }
            int axes[] = {axis};
            detail::fft_axes(next, g_, axes, FftDirection::backward);
            if (axis == g_.dim() - 1) {
                for (std::size_t k = 0; k < next.size(); ++k)
                    acc_[k] = std::max(acc_[k], std::abs(next[k]) * norm_);
            } else {
                descend(next, axis + 1, axis == 0 ? s : first_choice, nonzero);
            }
        }
    }

    const GridSpec& g_;
    std::vector<double> scales_;
    MaximalMode mode_;
    std::vector<double>& acc_;
    std::array<std::vector<std::vector<double>>, kMaxDim> factors_;
    double norm_;
};

} // namespace

Field poisson_smooth(const Field& f, std::span<const double> t)
{
    const auto& g = f.grid();
    if (t.size() != static_cast<std::size_t>(g.dim()))
        throw std::invalid_argument("poisson_smooth: need one scale per axis");
    for (double ti : t)
        if (!(ti >= 0.0) || !std::isfinite(ti))
            throw std::invalid_argument("poisson_smooth: scales must be finite and >= 0");
    std::vector<double> ts(t.begin(), t.end());
    MultiplierSpec m;
    m.evaluator = [ts](std::span<const double> xi) -> cplx {
        double e = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i)
            e += ts[i] * std::abs(xi[i]);
        return std::exp(-2.0 * std::numbers::pi * e);
    };
    m.dc_policy.reset();
    m.nyquist_policy.reset();
    m.real_preserving = true;
    return apply_multiplier(f, m);
}

Field maximal(const Field& f, const ScaleLadder& ladder, MaximalMode mode)
{
    const auto& g = f.grid();
    ladder.validate_for(g);

    std::vector<double> acc(f.size());
    for (std::size_t k = 0; k < acc.size(); ++k)
        acc[k] = std::abs(f[k]);

    std::vector<double> scales{0.0};
    for (double t : ladder.scales())
        scales.push_back(t);

    std::vector<cplx> spectrum(f.values().begin(), f.values().end());
    detail::fft_all(spectrum, g, FftDirection::forward);
    MaximalSweep(g, std::move(scales), mode, acc).run(spectrum);
    return Field::from_real(g, std::move(acc));
}

double hardy_norm_estimate(const Field& f, double p, const ScaleLadder& ladder, MaximalMode mode)
{
    return lp_quasinorm(maximal(f, ladder, mode), p);
}

double hardy_littlewood_functional(const Field& f, double p, WeightMode mode)
{
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("hardy_littlewood_functional: p must lie in (0, 1]");
    const auto& g = f.grid();
    const int d = g.dim();
    auto spec = forward_ft(f);
    double sum = 0.0;
    for (std::size_t flat = 0; flat < spec.size(); ++flat) {
        auto xi = spec.frequency(flat);
        double w;
        if (mode == WeightMode::product) {
            double prod = 1.0;
            for (int i = 0; i < d; ++i)
                prod *= std::abs(xi[i]);
            if (prod == 0.0)
                continue;
            w = std::pow(prod, 2.0 - p);
        } else {
            double r2 = 0.0;
            for (int i = 0; i < d; ++i)
                r2 += xi[i] * xi[i];
            if (r2 == 0.0)
                continue;
            w = std::pow(std::sqrt(r2), (2.0 - p) * d);
        }
        sum += std::pow(std::abs(spec[flat]), p) / w;
    }
    for (int i = 0; i < d; ++i)
        sum *= g.frequency_step(i);
    return std::pow(sum, 1.0 / p);
}

double uchiyama_rhs(const Field& f, double p)
{
    if (f.grid().dim() != 1)
        throw std::invalid_argument("uchiyama_rhs: field must be one-dimensional");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("uchiyama_rhs: p must lie in (0, 1]");
    return lp_quasinorm(f, p) + lp_quasinorm(hilbert_axis(f, 0), p);
}

} // namespace phl
