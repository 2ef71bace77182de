#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "phl/corpus.hpp"
#include "phl/grid.hpp"

namespace phl {

enum class ExperimentId {
    hls,
    hardy_littlewood,
    cesaro_hardy,
    cesaro_lp,
    iterated_hilbert,
    uchiyama,
    majorization,
    counterexample,
    sq_vs_max,
};

std::string to_string(ExperimentId id);
/// Throws std::invalid_argument on an unknown name.
ExperimentId parse_experiment_id(const std::string& name);
std::vector<ExperimentId> all_experiments();

struct ExperimentConfig {
    ExperimentId id = ExperimentId::hls;
    int d = 2;
    double p = 0.8;
    double alpha = 0.5;
    std::vector<std::size_t> n;   // empty: default for d
    std::vector<double> half_width;
    std::uint64_t seed = 7;
    double gate = 1e3;
    // Poisson ladder and cone apertures; unset bounds cover the grid.
    std::optional<int> ladder_jmin, ladder_jmax;
    int ladder_substeps = 1;
    std::optional<int> cone_jmin, cone_jmax;
    CorpusConfig corpus;
    /// uchiyama: "maximal" or "square" estimator on the left.
    std::string estimator = "maximal";
    /// hardy-littlewood: "hardy" (maximal estimate) or "hilbert"
    /// ((sum over axis subsets S of ||H_S f||_p^p)^(1/p)) on the right.
    std::string rhs = "hardy";

    /// Defaults (d, p, gate, grid) for `id`.
    static ExperimentConfig defaults(ExperimentId id);

    GridSpec grid() const;
    /// Throws std::invalid_argument on incompatible settings.
    void validate() const;
    /// 1/q = 1/p - alpha/d (hls only).
    double q() const;
};

/// Applies one key=value setting (the config-file keys and the CLI flags share
/// this path). Throws std::invalid_argument on unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Parses "n=1024x256,L=32x8" (also "n=512,L=16" for every axis).
void apply_grid_setting(ExperimentConfig& cfg, const std::string& value);

/// Reads key=value lines; '#' starts a comment. Errors carry path and line.
void load_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

struct ReportRow {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

/// Reference computation run alongside each experiment against a closed form.
struct OracleCheck {
    std::string name;
    double value = 0.0;
    double reference = 0.0;
    double abs_error = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<ReportRow> rows;
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
    double spread = 0.0;
    OracleCheck oracle;
    bool pass = false;
};

/// Builds the corpus, evaluates every member and summarizes. A non-finite
/// lhs, rhs or ratio throws std::runtime_error naming the member.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Fills min/median/max/spread and pass from rows and gate.
void summarize(ExperimentReport& report);

std::string report_csv(const ExperimentReport& report);
std::string report_json(const ExperimentReport& report);

/// Writes <dir>/<id>.csv and <dir>/<id>.json.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

} // namespace phl
