#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "phl/grid.hpp"

namespace phl {

/// Axis-aligned box prod_i [lo_i, lo_i + side_i).
struct Rectangle {
    int dim = 0;
    std::array<double, kMaxDim> lo{};
    std::array<double, kMaxDim> side{};

    double volume() const;
    bool contains(std::span<const double> x) const;
    bool overlaps(const Rectangle& other) const;
    /// Every side is 2^j with lo a multiple of 2^j.
    bool is_dyadic() const;

    /// Dyadic rectangle with sides 2^exponents[i] and lo_i = k_i 2^exponents[i].
    static Rectangle dyadic(std::span<const int> exponents, std::span<const long> k);
};

/// H^p atom on the interval [center - radius, center + radius].
struct AtomSpec1D {
    double p = 1.0;
    double center = 0.0;
    double radius = 1.0;
    std::uint64_t seed = 0;
};

/// Simplified Chang-Fefferman atom: a finite family of pairwise disjoint
/// dyadic rectangles standing in for the maximal rectangles of Omega.
struct CFAtomSpec {
    double p = 1.0;
    std::vector<Rectangle> rectangles;
    std::uint64_t seed = 0;
};

/// Deterministic child seed: splitmix64 of seed ^ golden-ratio-spaced index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Throws std::invalid_argument unless `r` lies in the central half of `grid`
/// (|x_i| <= L_i / 2).
void require_central_half(const Rectangle& r, const GridSpec& grid);

/// Seeded smooth random profile on B, made orthogonal (discretely) to the
/// polynomials of degree <= [1/p - 1] on the samples in B, then scaled so that
/// max |a| = |B|^(-1/p). Zero outside B.
Field make_hp_atom_1d(const AtomSpec1D& spec, const GridSpec& grid);

/// Tensor product of per-axis 1-d atoms on the sides of `rect`, scaled so
/// that ||a||_2^2 = |R|^(1 - 2/p). `axis_seeds` holds one seed per axis.
Field make_rect_atom(double p, const Rectangle& rect, std::span<const std::uint64_t> axis_seeds,
                     const GridSpec& grid);

/// Per-axis seeds make_cf_atom uses for rectangle `index` of an atom seeded
/// with `seed`.
std::vector<std::uint64_t> cf_rectangle_seeds(std::uint64_t seed, std::size_t index, int dim);

/// Sum of weighted rectangle atoms a_R, globally scaled so that
/// sum_R ||a_R||_2^2 = |Omega|^(1 - 2/p), |Omega| = sum_R |R|.
Field make_cf_atom(const CFAtomSpec& spec, const GridSpec& grid);

/// chi_(0,1] - chi_(1,2] sampled on a 1-d grid whose central half holds [0, 2].
Field counterexample_field(const GridSpec& grid);

// Independent validator; shares no code with the generators above.

struct ValidationResult {
    bool ok = true;
    std::string message;
};

/// Support in B, sup bound |B|^(-1/p), moments 0..[1/p-1] below 1e-8 relative.
ValidationResult validate_hp_atom_1d(const Field& a, double p, double center, double radius);

/// Support in the union of `rects`, sum_R ||a|_R||_2^2 <= |Omega|^(1-2/p)
/// (relative slack 1e-10), and for every rectangle and every axis the
/// one-variable moments 0..[1/p-1] of a|_R vanish along each grid line
/// (1e-8 relative).
ValidationResult validate_product_atom(const Field& a, double p, std::span<const Rectangle> rects);

} // namespace phl
