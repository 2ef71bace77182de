#pragma once

#include "phl/grid.hpp"

namespace phl {

/// Hardy-Cesaro average (x_1 ... x_d)^-1 int_0^x_1 ... int_0^x_d f(t) dt.
///
/// Integrals are oriented (int_0^x = -int_x^0 for x < 0) and use midpoint
/// cells accumulated outward from the cells adjacent to 0; the cell holding
/// the evaluation point contributes half its mass.
Field hardy_cesaro(const Field& f);

enum class CesaroMode { on_fourier, direct };

/// on_fourier: (sum over bins with every xi_i != 0 of
///              |H(F)(xi)|^p prod |xi_i|^(p-2) prod dxi_i)^(1/p), where F is
///              the spectrum viewed as a field on the frequency lattice and
///              the lattice averages use trapezoidal cells starting at xi = 0.
/// direct:     lp_quasinorm(hardy_cesaro(f), p).
double cesaro_hardy_lhs(const Field& f, double p, CesaroMode mode);

} // namespace phl
