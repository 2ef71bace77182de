#pragma once

#include <span>
#include <vector>

#include "phl/grid.hpp"

namespace phl {

/// Finite set of smoothing scales 2^(j / substeps), j_min * substeps <= j <=
/// j_max * substeps, standing in for the supremum over all scales. With the
/// default substeps = 1 this is the dyadic ladder 2^j_min, ..., 2^j_max.
class ScaleLadder {
public:
    ScaleLadder(int j_min, int j_max, int substeps = 1);

    /// Smallest dyadic ladder reaching from the finest spacing to the widest
    /// half-width of `grid`.
    static ScaleLadder covering(const GridSpec& grid, int substeps = 1);

    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }
    int substeps() const { return substeps_; }
    std::vector<double> scales() const;

    /// Throws unless 2^j_min <= min h_i and 2^j_max >= max L_i.
    void validate_for(const GridSpec& grid) const;

private:
    int j_min_;
    int j_max_;
    int substeps_;
};

enum class MaximalMode { radial, product };

/// Convolution with the product Poisson kernel prod_i P_{t_i}(x_i), i.e. the
/// multiplier prod_i exp(-2 pi t_i |xi_i|). t_i = 0 leaves axis i untouched.
Field poisson_smooth(const Field& f, std::span<const double> t);

/// Pointwise max of |f * P_t| over t in {0} U ladder: equal scales on all
/// axes (radial) or every per-axis combination (product). The t = 0 term is
/// |f| itself, so the result dominates |f| exactly.
Field maximal(const Field& f, const ScaleLadder& ladder, MaximalMode mode);

/// lp_quasinorm(maximal(f, ladder, mode), p).
double hardy_norm_estimate(const Field& f, double p, const ScaleLadder& ladder, MaximalMode mode);

enum class WeightMode { product, classical };

/// (sum |F(xi)|^p / w(xi) * prod dxi_i)^(1/p) over bins with every xi_i != 0
/// (product, w = prod |xi_i|^(2-p)) or xi != 0 (classical, w = |xi|^((2-p)d)).
double hardy_littlewood_functional(const Field& f, double p, WeightMode mode);

/// ||f||_p + ||H f||_p for a one-dimensional field.
double uchiyama_rhs(const Field& f, double p);

} // namespace phl
