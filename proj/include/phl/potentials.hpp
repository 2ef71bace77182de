#pragma once

#include "phl/grid.hpp"
#include "phl/spectral.hpp"

namespace phl {

/// One-dimensional Riesz order beta in (0, 1): kernel |y|^(beta - 1).
class RieszOrder {
public:
    explicit RieszOrder(double beta);
    double value() const { return beta_; }

private:
    double beta_;
};

/// c(beta) such that int |y|^(beta-1) exp(-2 pi i y xi) dy = c(beta) |xi|^(-beta):
/// c(beta) = 2 Gamma(beta) cos(pi beta / 2) (2 pi)^(-beta).
double riesz_constant(double beta);

/// Output of a fractional integration together with its cancellation check.
struct PotentialResult {
    Field field;
    /// Largest relative spectral energy found on xi_axis = 0 bins over the
    /// integrated axes.
    double dc_energy_ratio = 0.0;
    /// Set when dc_energy_ratio exceeds kDcFlagThreshold; the dc bins are
    /// zeroed regardless.
    bool dc_flagged = false;
};

inline constexpr double kDcFlagThreshold = 1e-6;

MultiplierSpec riesz_multiplier(int axis, RieszOrder beta);

/// Convolution along `axis` with |y|^(beta-1), computed as the multiplier
/// c(beta) |xi_axis|^(-beta) with the xi_axis = 0 bins zeroed.
PotentialResult riesz_axis(const Field& f, int axis, RieszOrder beta);

/// Product fractional integral: convolution with prod_i |y_i|^(alpha/d - 1),
/// i.e. riesz_axis with beta = alpha/d along every axis. Requires alpha in (0, d).
PotentialResult product_fractional(const Field& f, double alpha);

/// Relative energy of the bins with xi_axis = 0.
double axis_dc_energy_ratio(const Field& f, int axis);

} // namespace phl
