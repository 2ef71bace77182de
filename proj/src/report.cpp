#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "phl/experiment.hpp"

namespace phl {

namespace {

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// JSON has no inf/nan; such values are written as strings.
nlohmann::ordered_json number(double v)
{
    if (std::isfinite(v))
        return v;
    return fmt17(v);
}

nlohmann::ordered_json config_json(const ExperimentReport& r)
{
    const auto& c = r.config;
    nlohmann::ordered_json j;
    j["id"] = to_string(c.id);
    j["d"] = c.d;
    j["p"] = c.p;
    if (c.id == ExperimentId::hls) {
        j["alpha"] = c.alpha;
        j["q"] = c.q();
    }
    auto g = c.grid();
    std::vector<std::size_t> n;
    std::vector<double> L;
    for (int i = 0; i < g.dim(); ++i) {
        n.push_back(g.n(i));
        L.push_back(g.half_width(i));
    }
    j["grid"] = {{"n", n}, {"L", L}};
    j["seed"] = c.seed;
    j["gate"] = c.gate;
    nlohmann::ordered_json ladder;
    ladder["j_min"] = c.ladder_jmin ? nlohmann::ordered_json(*c.ladder_jmin) : nlohmann::ordered_json("covering");
    ladder["j_max"] = c.ladder_jmax ? nlohmann::ordered_json(*c.ladder_jmax) : nlohmann::ordered_json("covering");
    ladder["substeps"] = c.ladder_substeps;
    j["ladder"] = ladder;
    const auto& cc = c.corpus;
    nlohmann::ordered_json corpus;
    if (c.d == 1 && c.id != ExperimentId::counterexample) {
        corpus["atoms_1d"] = cc.atoms_1d;
    } else if (c.id != ExperimentId::counterexample) {
        corpus["scale_count"] = cc.scale_count;
        corpus["aspect_count"] = cc.aspect_count;
        corpus["rect_per_cell"] = cc.rect_per_cell;
        corpus["cf_count"] = cc.cf_count;
        corpus["cf_rects"] = {cc.cf_min_rects, cc.cf_max_rects};
    }
    if (!cc.scale_exponents.empty())
        corpus["scale_exponents"] = cc.scale_exponents;
    if (!corpus.empty())
        j["corpus"] = corpus;
    if (c.id == ExperimentId::uchiyama)
        j["estimator"] = c.estimator;
    if (c.id == ExperimentId::hardy_littlewood)
        j["rhs"] = c.rhs;
    j["oracle"] = {{"name", r.oracle.name},
                   {"value", number(r.oracle.value)},
                   {"reference", number(r.oracle.reference)},
                   {"abs_error", number(r.oracle.abs_error)}};
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

} // namespace

void summarize(ExperimentReport& report)
{
    std::vector<double> r;
    bool finite = true;
    for (const auto& row : report.rows) {
        r.push_back(row.ratio);
        finite = finite && std::isfinite(row.lhs) && std::isfinite(row.rhs) && std::isfinite(row.ratio);
    }
    if (r.empty()) {
        report.min = report.median = report.max = report.spread = std::numeric_limits<double>::quiet_NaN();
        report.pass = false;
        return;
    }
    std::sort(r.begin(), r.end());
    report.min = r.front();
    report.max = r.back();
    std::size_t m = r.size() / 2;
    report.median = r.size() % 2 ? r[m] : 0.5 * (r[m - 1] + r[m]);
    report.spread = report.min > 0.0 ? report.max / report.min : std::numeric_limits<double>::infinity();
    report.pass = finite && report.spread <= report.config.gate;
}

std::string report_csv(const ExperimentReport& report)
{
    std::string s = "id,lhs,rhs,ratio\n";
    for (const auto& r : report.rows)
        s += r.id + "," + fmt17(r.lhs) + "," + fmt17(r.rhs) + "," + fmt17(r.ratio) + "\n";
    return s;
}

std::string report_json(const ExperimentReport& report)
{
    nlohmann::ordered_json j;
    j["config"] = config_json(report);
    j["rows"] = report.rows.size();
    j["summary"] = {{"min", number(report.min)},
                    {"median", number(report.median)},
                    {"max", number(report.max)},
                    {"spread", number(report.spread)}};
    j["pass"] = report.pass;
    return j.dump(2) + "\n";
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    const auto id = to_string(report.config.id);
    write_text(dir / (id + ".csv"), report_csv(report));
    write_text(dir / (id + ".json"), report_json(report));
}

} // namespace phl
