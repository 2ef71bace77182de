#pragma once

#include <span>
#include <vector>

#include "phl/grid.hpp"

namespace phl::detail {

enum class FftDirection { forward = -1, backward = +1 };

/// Unnormalized in-place DFT of `data` (row-major on `grid`) along `axes`,
/// exponent sign given by `dir`. Natural (FFT) bin order.
void fft_axes(std::vector<cplx>& data, const GridSpec& grid, std::span<const int> axes, FftDirection dir);

void fft_all(std::vector<cplx>& data, const GridSpec& grid, FftDirection dir);

/// Phase factor (-1)^k exp(-i pi k / n) that converts the natural DFT bin
/// with signed index k into the continuous transform for a half-offset grid
/// (up to the factor h).
cplx half_offset_phase(long k, std::size_t n);

} // namespace phl::detail
