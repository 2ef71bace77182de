#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "phl/atoms.hpp"
#include "phl/grid.hpp"

namespace phl {

struct CorpusConfig {
    double p = 0.8;
    std::uint64_t seed = 7;
    /// One-dimensional grids: number of H^p atoms.
    int atoms_1d = 32;
    /// Dyadic exponents j of the short side (d >= 2) or radius (d = 1); empty
    /// selects `scale_count` exponents from the finest resolvable one upward.
    std::vector<int> scale_exponents;
    int scale_count = 4;
    /// Aspect ratios 2^0, ..., 2^(aspect_count - 1) for rectangle atoms.
    int aspect_count = 4;
    int rect_per_cell = 2;
    int cf_count = 8;
    int cf_min_rects = 2;
    int cf_max_rects = 8;
};

enum class AtomKind { hp_1d, rect, cf };

std::string to_string(AtomKind kind);

struct CorpusMember {
    std::string id;
    AtomKind kind = AtomKind::rect;
    double p = 1.0;
    std::uint64_t seed = 0;
    // Geometry: the interval for hp_1d, the rectangle list otherwise.
    double center = 0.0;
    double radius = 0.0;
    std::vector<Rectangle> rectangles;
    Field field;
};

/// Deterministic corpus on `grid`: 1-d atoms when d = 1, otherwise rectangle
/// atoms over scales x aspect ratios plus Chang-Fefferman atoms. Every member
/// is checked by the independent validator; a failure throws.
std::vector<CorpusMember> build_corpus(const CorpusConfig& config, const GridSpec& grid);

/// Geometry of a member as a compact JSON string.
std::string geometry_json(const CorpusMember& m);

/// Writes <dir>/fields/<id>.phl for every member and returns the manifest as
/// JSON lines {id, kind, p, geometry, seed, field}.
std::string write_corpus(const std::vector<CorpusMember>& corpus, const std::filesystem::path& dir);

} // namespace phl
