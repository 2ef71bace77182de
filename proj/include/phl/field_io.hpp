#pragma once

#include <filesystem>
#include <iosfwd>

#include "phl/grid.hpp"

namespace phl {

// Binary field file:
//   "PHL1" | u32 d | u32 n_i (x d) | f64 L_i (x d) | u8 kind (0 real, 1 complex)
//   then little-endian f64 values, re/im interleaved when complex, row-major.

void write_field(std::ostream& out, const Field& f);
Field read_field(std::istream& in);

void write_field(const std::filesystem::path& path, const Field& f);
Field read_field(const std::filesystem::path& path);

} // namespace phl
