#include "phl/corpus.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "phl/field_io.hpp"

namespace phl {

namespace {

long uniform_index(std::mt19937_64& rng, long lo, long hi)
{
    if (hi < lo)
        throw std::invalid_argument("corpus: empty placement range");
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Random dyadic placement of a box with sides 2^e_i inside the central half.
Rectangle place_dyadic(std::mt19937_64& rng, const GridSpec& grid, std::span<const int> exps)
{
    std::vector<long> k(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) {
        double side = std::exp2(exps[i]);
        double half = grid.half_width(static_cast<int>(i)) / 2.0;
        auto lo = static_cast<long>(std::ceil(-half / side));
        auto hi = static_cast<long>(std::floor(half / side)) - 1;
        k[i] = uniform_index(rng, lo, hi);
    }
    return Rectangle::dyadic(exps, k);
}

int finest_exponent(const GridSpec& grid)
{
    double h = 0.0;
    for (int i = 0; i < grid.dim(); ++i)
        h = std::max(h, grid.spacing(i));
    return static_cast<int>(std::ceil(std::log2(4.0 * h)));
}

void check_valid(const CorpusMember& m, const ValidationResult& v)
{
    if (!v.ok)
        throw std::runtime_error("corpus member " + m.id + " failed validation: " + v.message);
}

std::vector<CorpusMember> build_1d(const CorpusConfig& cfg, const GridSpec& grid)
{
    std::vector<int> exps = cfg.scale_exponents;
    if (exps.empty()) {
        int lo = static_cast<int>(std::ceil(std::log2(4.0 * grid.spacing(0))));
        int hi = static_cast<int>(std::floor(std::log2(grid.half_width(0) / 8.0)));
        for (int j = lo; j <= hi; ++j)
            exps.push_back(j);
    }
    if (exps.empty())
        throw std::invalid_argument("corpus: grid admits no atom radius");

    std::vector<CorpusMember> out;
    for (int i = 0; i < cfg.atoms_1d; ++i) {
        CorpusMember m;
        m.kind = AtomKind::hp_1d;
        m.p = cfg.p;
        m.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
        std::mt19937_64 rng(m.seed);
        int j = exps[static_cast<std::size_t>(i) % exps.size()];
        m.radius = std::exp2(j);
        double half = grid.half_width(0) / 2.0;
        if (m.radius >= half)
            throw std::invalid_argument("corpus: atom radius 2^" + std::to_string(j) + " does not fit");
        m.center = uniform(rng, -half + m.radius, half - m.radius);
        m.id = "hp1d-" + std::to_string(i) + "-r" + std::to_string(j);
        m.field = make_hp_atom_1d({m.p, m.center, m.radius, derive_seed(m.seed, 1)}, grid);
        check_valid(m, validate_hp_atom_1d(m.field, m.p, m.center, m.radius));
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<CorpusMember> build_product(const CorpusConfig& cfg, const GridSpec& grid)
{
    const int d = grid.dim();
    std::vector<int> exps = cfg.scale_exponents;
    const int j_lo = finest_exponent(grid);
    if (exps.empty())
        for (int s = 0; s < cfg.scale_count; ++s)
            exps.push_back(j_lo + s);

    std::vector<CorpusMember> out;
    std::uint64_t index = 0;
    for (int j : exps) {
        for (int a = 0; a < cfg.aspect_count; ++a) {
            for (int rep = 0; rep < cfg.rect_per_cell; ++rep, ++index) {
                CorpusMember m;
                m.kind = AtomKind::rect;
                m.p = cfg.p;
                m.seed = derive_seed(cfg.seed, index);
                std::mt19937_64 rng(m.seed);

                int long_axis = -1;
                for (int t = 0; t < d && long_axis < 0; ++t) {
                    int cand = (rep + a + t) % d;
                    if (std::exp2(j + a) <= grid.half_width(cand) / 2.0)
                        long_axis = cand;
                }
                if (long_axis < 0)
                    throw std::invalid_argument("corpus: rectangle 2^" + std::to_string(j + a) + " x 2^"
                                                + std::to_string(j) + " does not fit the central half");
                std::vector<int> e(d, j);
                e[long_axis] = j + a;
                for (int i = 0; i < d; ++i)
                    if (std::exp2(e[i]) > grid.half_width(i) / 2.0)
                        throw std::invalid_argument("corpus: short side 2^" + std::to_string(j) + " does not fit");

                m.rectangles = {place_dyadic(rng, grid, e)};
                std::vector<std::uint64_t> seeds;
                for (int i = 0; i < d; ++i)
                    seeds.push_back(derive_seed(m.seed, static_cast<std::uint64_t>(i) + 1));
                m.id = "rect-j" + std::to_string(j) + "-a" + std::to_string(a) + "-" + std::to_string(rep);
                m.field = make_rect_atom(m.p, m.rectangles[0], seeds, grid);
                check_valid(m, validate_product_atom(m.field, m.p, m.rectangles));
                out.push_back(std::move(m));
            }
        }
    }

    const int span_exps = std::max(1, std::min(3, static_cast<int>(exps.size())));
    for (int c = 0; c < cfg.cf_count; ++c, ++index) {
        CorpusMember m;
        m.kind = AtomKind::cf;
        m.p = cfg.p;
        m.seed = derive_seed(cfg.seed, index);
        std::mt19937_64 rng(m.seed);
        const int count = static_cast<int>(uniform_index(rng, cfg.cf_min_rects, cfg.cf_max_rects));
        int attempts = 0;
        while (static_cast<int>(m.rectangles.size()) < count) {
            if (++attempts > 10000)
                throw std::runtime_error("corpus: could not place disjoint rectangles for CF atom " + std::to_string(c));
            std::vector<int> e(d);
            for (int i = 0; i < d; ++i)
                e[i] = exps.front() + static_cast<int>(uniform_index(rng, 0, span_exps));
            Rectangle r = place_dyadic(rng, grid, e);
            bool clash = false;
            for (const auto& q : m.rectangles)
                clash = clash || q.overlaps(r);
            if (!clash)
                m.rectangles.push_back(r);
        }
        m.id = "cf-" + std::to_string(c) + "-n" + std::to_string(count);
        m.field = make_cf_atom({m.p, m.rectangles, m.seed}, grid);
        check_valid(m, validate_product_atom(m.field, m.p, m.rectangles));
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace

std::string to_string(AtomKind kind)
{
    switch (kind) {
    case AtomKind::hp_1d:
        return "hp1d";
    case AtomKind::rect:
        return "rect";
    case AtomKind::cf:
        return "cf";
    }
    return "unknown";
}

std::vector<CorpusMember> build_corpus(const CorpusConfig& config, const GridSpec& grid)
{
    if (!(config.p > 0.0 && config.p <= 1.0))
        throw std::invalid_argument("corpus: p must lie in (0, 1]");
    if (config.atoms_1d < 0 || config.scale_count < 1 || config.aspect_count < 1 || config.rect_per_cell < 0
        || config.cf_count < 0 || config.cf_min_rects < 1 || config.cf_max_rects < config.cf_min_rects)
        throw std::invalid_argument("corpus: invalid counts");
    return grid.dim() == 1 ? build_1d(config, grid) : build_product(config, grid);
}

std::string geometry_json(const CorpusMember& m)
{
    nlohmann::ordered_json g;
    if (m.kind == AtomKind::hp_1d) {
        g["center"] = m.center;
        g["radius"] = m.radius;
    } else {
        auto rects = nlohmann::ordered_json::array();
        for (const auto& r : m.rectangles) {
            nlohmann::ordered_json jr;
            jr["lo"] = std::vector<double>(r.lo.begin(), r.lo.begin() + r.dim);
            jr["side"] = std::vector<double>(r.side.begin(), r.side.begin() + r.dim);
            rects.push_back(jr);
        }
        g["rectangles"] = rects;
    }
    return g.dump();
}

std::string write_corpus(const std::vector<CorpusMember>& corpus, const std::filesystem::path& dir)
{
    auto field_dir = dir / "fields";
    std::filesystem::create_directories(field_dir);
    std::ostringstream manifest;
    for (const auto& m : corpus) {
        auto rel = std::filesystem::path("fields") / (m.id + ".phl");
        write_field(dir / rel, m.field);
        nlohmann::ordered_json line;
        line["id"] = m.id;
        line["kind"] = to_string(m.kind);
        line["p"] = m.p;
        line["geometry"] = nlohmann::ordered_json::parse(geometry_json(m));
        line["seed"] = m.seed;
        line["field"] = rel.generic_string();
        manifest << line.dump() << '\n';
    }
    return manifest.str();
}

} // namespace phl
