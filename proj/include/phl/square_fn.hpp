#pragma once

#include <cstddef>
#include <vector>

#include "phl/grid.hpp"

namespace phl {

/// Even analyzing function supported in [-1, 1] whose moments of order
/// 0..order vanish. Realized as the 2m-th derivative (2m the smallest even
/// integer > order) of the C-infinity bump exp(-1 / (1 - x^2)), scaled to
/// unit sup norm and sampled on a half-offset grid of [-1, 1).
class AnalyzingWavelet {
public:
    int order() const { return order_; }
    int derivative_order() const { return derivative_order_; }
    const Field& samples() const { return samples_; }

    /// Closed-form value psi(x).
    double value(double x) const;
    /// psi_hat(zeta) = int psi(x) cos(2 pi x zeta) dx by the midpoint rule on
    /// the stored samples.
    double fourier(double zeta) const;

private:
    friend AnalyzingWavelet build_psi(int order, std::size_t resolution);

    int order_ = 0;
    int derivative_order_ = 0;
    std::vector<double> even_coeffs_; // P(x) = sum_k c_k x^(2k)
    double scale_ = 1.0;
    Field samples_;
};

/// Throws std::runtime_error if a support, moment (1e-8 relative) or parity
/// check fails after construction.
AnalyzingWavelet build_psi(int order, std::size_t resolution = 4096);

/// Dyadic apertures rho_j = 2^j, j_min <= j <= j_max, each carrying the cone
/// weight ln 2 / rho_j (d rho / rho^2 over one octave) and the shift range
/// |s| < rho_j.
class ConeQuadrature {
public:
    ConeQuadrature(int j_min, int j_max);
    static ConeQuadrature covering(const GridSpec& grid);

    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }
    std::vector<double> apertures() const;
    std::vector<double> weights() const;
    /// Largest integer M with M * h < rho: shifts m h, |m| <= M, lie in the cone.
    static std::size_t shift_radius(double rho, double h);

private:
    int j_min_;
    int j_max_;
};

/// Product Lusin area integral
///   S(f)(x)^2 = sum over aperture tuples of prod_i w_i * sum_{|s_i| < rho_i}
///               prod_i h_i |f *_1 psi_rho_1 ... *_d psi_rho_d|^2 (x - s),
/// with psi_rho = rho^-1 psi(. / rho) applied as the multiplier psi_hat(rho xi).
/// For d = 1 this is the single-parameter S-function.
Field s_function(const Field& f, const AnalyzingWavelet& psi, const ConeQuadrature& quad);

/// lp_quasinorm(s_function(f, psi, quad), p). Rejects psi.order() < [1/p - 1].
double sq_norm_estimate(const Field& f, double p, const AnalyzingWavelet& psi, const ConeQuadrature& quad);

} // namespace phl
