#include "phl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fft_engine.hpp"

namespace phl {

using detail::FftDirection;

namespace {

void check_axis(const GridSpec& g, int axis, const char* what)
{
    if (axis < 0 || axis >= g.dim())
        throw std::invalid_argument(std::string(what) + ": axis " + std::to_string(axis)
                                    + " out of range for d = " + std::to_string(g.dim()));
}

// Per-axis factor h_i * phase_i(k) taking DFT bins to continuous-transform bins.
std::vector<cplx> axis_scale(const GridSpec& g, int axis)
{
    std::vector<cplx> s(g.n(axis));
    for (std::size_t m = 0; m < s.size(); ++m)
        s[m] = g.spacing(axis) * detail::half_offset_phase(g.freq_index(axis, m), g.n(axis));
    return s;
}

Field make_field(const GridSpec& g, std::vector<cplx> v, bool real)
{
    if (!real)
        return Field::from_complex(g, std::move(v));
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = v[i].real();
    return Field::from_real(g, std::move(r));
}

} // namespace

Spectrum::Spectrum(GridSpec grid, std::vector<cplx> coeffs) : grid_(std::move(grid)), coeffs_(std::move(coeffs))
{
    if (coeffs_.size() != grid_.size())
        throw std::invalid_argument("spectrum size does not match grid");
}

std::array<double, kMaxDim> Spectrum::frequency(std::size_t flat) const
{
    auto idx = grid_.unflatten(flat);
    std::array<double, kMaxDim> xi{};
    for (int i = 0; i < grid_.dim(); ++i)
        xi[i] = grid_.frequency(i, idx[i]);
    return xi;
}

double Spectrum::energy() const
{
    double s = 0.0;
    for (auto c : coeffs_)
        s += std::norm(c);
    for (int i = 0; i < grid_.dim(); ++i)
        s *= grid_.frequency_step(i);
    return s;
}

Spectrum forward_ft(const Field& f)
{
    const auto& g = f.grid();
    std::vector<cplx> data(f.values().begin(), f.values().end());
    detail::fft_all(data, g, FftDirection::forward);
    std::array<std::vector<cplx>, kMaxDim> scale;
    for (int i = 0; i < g.dim(); ++i)
        scale[i] = axis_scale(g, i);
    for (std::size_t flat = 0; flat < data.size(); ++flat) {
        auto idx = g.unflatten(flat);
        cplx s = 1.0;
        for (int i = 0; i < g.dim(); ++i)
            s *= scale[i][idx[i]];
        data[flat] *= s;
    }
    return Spectrum(g, std::move(data));
}

Field inverse_ft(const Spectrum& spec)
{
    const auto& g = spec.grid();
    std::vector<cplx> data(spec.coeffs().begin(), spec.coeffs().end());
    std::array<std::vector<cplx>, kMaxDim> scale;
    for (int i = 0; i < g.dim(); ++i) {
        scale[i] = axis_scale(g, i);
        for (auto& s : scale[i])
            s = 1.0 / (s * static_cast<double>(g.n(i)));
    }
    for (std::size_t flat = 0; flat < data.size(); ++flat) {
        auto idx = g.unflatten(flat);
        cplx s = 1.0;
        for (int i = 0; i < g.dim(); ++i)
            s *= scale[i][idx[i]];
        data[flat] *= s;
    }
    detail::fft_all(data, g, FftDirection::backward);
    return Field::from_complex(g, std::move(data));
}

Field partial_ft(const Field& f, int axis)
{
    const auto& g = f.grid();
    check_axis(g, axis, "partial_ft");
    std::vector<cplx> data(f.values().begin(), f.values().end());
    int axes[] = {axis};
    detail::fft_axes(data, g, axes, FftDirection::forward);
    auto scale = axis_scale(g, axis);
    for (std::size_t flat = 0; flat < data.size(); ++flat)
        data[flat] *= scale[(flat / g.stride(axis)) % g.n(axis)];
    return Field::from_complex(g, std::move(data));
}

Field apply_multiplier(const Field& f, const MultiplierSpec& m)
{
    const auto& g = f.grid();
    if (!m.evaluator)
        throw std::invalid_argument("apply_multiplier: empty evaluator");
    std::vector<int> active = m.active_axes;
    if (active.empty())
        for (int i = 0; i < g.dim(); ++i)
            active.push_back(i);
    for (int a : active)
        check_axis(g, a, "apply_multiplier");

    // The half-offset phases and h scaling of forward_ft cancel against
    // those of inverse_ft, so the multiplier acts directly on DFT bins.
    std::vector<cplx> data(f.values().begin(), f.values().end());
    detail::fft_all(data, g, FftDirection::forward);

    std::array<double, kMaxDim> xi{};
    const double norm = 1.0 / static_cast<double>(g.size());
    for (std::size_t flat = 0; flat < data.size(); ++flat) {
        auto idx = g.unflatten(flat);
        bool dc = false;
        bool nyquist = false;
        for (int a : active) {
            long k = g.freq_index(a, idx[a]);
            dc = dc || k == 0;
            nyquist = nyquist || k == -static_cast<long>(g.n(a) / 2);
        }
        cplx factor;
        if (dc && m.dc_policy) {
            factor = *m.dc_policy;
        } else if (nyquist && m.nyquist_policy) {
            factor = *m.nyquist_policy;
        } else {
            for (int i = 0; i < g.dim(); ++i)
                xi[i] = g.frequency(i, idx[i]);
            factor = m.evaluator(std::span<const double>(xi.data(), static_cast<std::size_t>(g.dim())));
        }
        if (!std::isfinite(factor.real()) || !std::isfinite(factor.imag()))
            throw std::domain_error("apply_multiplier: non-finite multiplier at bin " + std::to_string(flat));
        data[flat] *= factor * norm;
    }
    detail::fft_all(data, g, FftDirection::backward);
    return make_field(g, std::move(data), f.is_real() && m.real_preserving);
}

MultiplierSpec hilbert_multiplier(int axis)
{
    MultiplierSpec m;
    m.evaluator = [axis](std::span<const double> xi) -> cplx {
        double s = xi[axis] > 0.0 ? 1.0 : (xi[axis] < 0.0 ? -1.0 : 0.0);
        return {0.0, -s};
    };
    m.active_axes = {axis};
    m.real_preserving = true;
    return m;
}

Field hilbert_axis(const Field& f, int axis)
{
    check_axis(f.grid(), axis, "hilbert_axis");
    return apply_multiplier(f, hilbert_multiplier(axis));
}

Field iterated_hilbert(const Field& f, std::span<const int> axes)
{
    for (std::size_t i = 0; i < axes.size(); ++i) {
        check_axis(f.grid(), axes[i], "iterated_hilbert");
        for (std::size_t j = 0; j < i; ++j)
            if (axes[i] == axes[j])
                throw std::invalid_argument("iterated_hilbert: repeated axis " + std::to_string(axes[i]));
    }
    if (axes.empty())
        return f;
    // Product of the commuting per-axis multipliers, applied in one pass so
    // the result does not depend on the order of `axes`.
    std::vector<int> sorted(axes.begin(), axes.end());
    std::sort(sorted.begin(), sorted.end());
    MultiplierSpec m;
    m.evaluator = [sorted](std::span<const double> xi) -> cplx {
        cplx v = 1.0;
        for (int a : sorted)
            v *= cplx(0.0, xi[a] > 0.0 ? -1.0 : (xi[a] < 0.0 ? 1.0 : 0.0));
        return v;
    };
    m.active_axes = sorted;
    m.real_preserving = true;
    return apply_multiplier(f, m);
}

} // namespace phl
