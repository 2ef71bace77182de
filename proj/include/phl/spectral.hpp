#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "phl/grid.hpp"

namespace phl {

/// Approximation of the continuous Fourier transform
/// F(xi) = int f(x) exp(-2 pi i x.xi) dx at the bin frequencies
/// xi_i(k) = k / (2 L_i), k in [-n_i/2, n_i/2). Coefficients are stored in
/// natural FFT order; use GridSpec::freq_index / frequency to map bins.
class Spectrum {
public:
    Spectrum(GridSpec grid, std::vector<cplx> coeffs);

    const GridSpec& grid() const { return grid_; }
    std::span<const cplx> coeffs() const { return coeffs_; }
    cplx operator[](std::size_t i) const { return coeffs_[i]; }
    std::size_t size() const { return coeffs_.size(); }

    /// Frequency vector of flat bin `flat` (first d entries meaningful).
    std::array<double, kMaxDim> frequency(std::size_t flat) const;

    /// Sum of |F|^2 over bins times prod (1 / 2L_i): equals ||f||_2^2.
    double energy() const;

private:
    GridSpec grid_;
    std::vector<cplx> coeffs_;
};

Spectrum forward_ft(const Field& f);
Field inverse_ft(const Spectrum& s);

/// Transform along `axis` only; the output is indexed by frequency (natural
/// order) along `axis` and by space along the others.
Field partial_ft(const Field& f, int axis);

/// Fourier multiplier. A bin is a "dc bin" when xi_i = 0 on some active axis
/// and a "nyquist bin" when its index is -n_i/2 on some active axis; for such
/// bins the policy value replaces the evaluator (nullopt = use the evaluator).
struct MultiplierSpec {
    std::function<cplx(std::span<const double>)> evaluator;
    std::optional<cplx> dc_policy = cplx(0.0);
    std::optional<cplx> nyquist_policy = cplx(0.0);
    /// Axes that define dc/nyquist bins; empty = every axis.
    std::vector<int> active_axes;
    /// Declares m(-xi) = conj(m(xi)); real input then yields a real field.
    bool real_preserving = false;
};

/// inverse_ft(m(xi) * forward_ft(f)). Throws on a non-finite multiplier
/// value at any applied bin.
Field apply_multiplier(const Field& f, const MultiplierSpec& m);

/// Multiplier -i sign(xi_axis); dc and nyquist bins along `axis` zeroed.
MultiplierSpec hilbert_multiplier(int axis);

Field hilbert_axis(const Field& f, int axis);

/// Composition of hilbert_axis over distinct `axes`.
Field iterated_hilbert(const Field& f, std::span<const int> axes);

} // namespace phl
