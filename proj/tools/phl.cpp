// Command-line front end: corpus generation, experiment runs and summaries.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "phl/corpus.hpp"
#include "phl/experiment.hpp"

namespace {

struct CommonFlags {
    std::string config;
    std::string out = "out";
    std::optional<std::string> seed, grid, p, alpha, gate;
};

void add_common(CLI::App* cmd, CommonFlags& f)
{
    cmd->add_option("--config", f.config, "key=value configuration file");
    cmd->add_option("--out", f.out, "output directory")->capture_default_str();
    cmd->add_option("--seed", f.seed, "corpus seed (u64)");
    cmd->add_option("--grid", f.grid, "grid, e.g. n=1024x256,L=32x8");
    cmd->add_option("--p", f.p, "exponent p in (0, 1]");
    cmd->add_option("--alpha", f.alpha, "fractional order (hls)");
    cmd->add_option("--gate", f.gate, "max/min ratio spread gate");
}

phl::ExperimentConfig resolve(phl::ExperimentId id, const CommonFlags& f, const std::vector<std::string>& sets)
{
    auto cfg = phl::ExperimentConfig::defaults(id);
    if (!f.config.empty())
        phl::load_config_file(cfg, f.config);
    for (const auto& s : sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got '" + s + "'");
        phl::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    if (f.grid)
        phl::apply_grid_setting(cfg, *f.grid);
    if (f.seed)
        phl::apply_setting(cfg, "seed", *f.seed);
    if (f.p)
        phl::apply_setting(cfg, "p", *f.p);
    if (f.alpha)
        phl::apply_setting(cfg, "alpha", *f.alpha);
    if (f.gate)
        phl::apply_setting(cfg, "gate", *f.gate);
    cfg.validate();
    return cfg;
}

std::string show(const nlohmann::json& v)
{
    if (!v.is_number())
        return v.get<std::string>();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
    return buf;
}

void print_summary(const std::string& id, const nlohmann::json& j)
{
    const auto& s = j.at("summary");
    std::printf("%-18s %-4s rows=%-4d min=%-12s median=%-12s max=%-12s spread=%s\n", id.c_str(),
                j.at("pass").get<bool>() ? "PASS" : "FAIL", j.at("rows").get<int>(), show(s.at("min")).c_str(),
                show(s.at("median")).c_str(), show(s.at("max")).c_str(), show(s.at("spread")).c_str());
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Product Hardy space inequality experiments"};
    app.require_subcommand(1);

    CommonFlags gen_flags, verify_flags, report_flags;
    std::vector<std::string> gen_sets, verify_sets;

    auto* gen = app.add_subcommand("gen-corpus", "write an atom corpus (manifest + binary fields)");
    add_common(gen, gen_flags);
    gen->add_option("--set", gen_sets, "extra key=value setting (repeatable)");

    std::string verify_id;
    auto* verify = app.add_subcommand("verify", "run one experiment and write <out>/<id>.csv and .json");
    verify->add_option("id", verify_id, "experiment id")->required();
    add_common(verify, verify_flags);
    verify->add_option("--set", verify_sets, "extra key=value setting (repeatable)");

    auto* report = app.add_subcommand("report", "summarize the experiment reports found in --out");
    add_common(report, report_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            // Corpus settings do not depend on the experiment; hls defaults give the d = 2 grid.
            auto cfg = resolve(phl::ExperimentId::hls, gen_flags, gen_sets);
            auto cc = cfg.corpus;
            cc.p = cfg.p;
            cc.seed = cfg.seed;
            auto grid = cfg.grid();
            auto corpus = phl::build_corpus(cc, grid);
            auto manifest = phl::write_corpus(corpus, gen_flags.out);
            auto path = std::filesystem::path(gen_flags.out) / "corpus.jsonl";
            std::ofstream out(path, std::ios::binary);
            if (!(out << manifest))
                throw std::runtime_error("cannot write " + path.string());
            std::printf("wrote %zu members to %s\n", corpus.size(), path.string().c_str());
            return 0;
        }
        if (*verify) {
            auto id = phl::parse_experiment_id(verify_id);
            auto cfg = resolve(id, verify_flags, verify_sets);
            auto rep = phl::run_experiment(cfg);
            phl::write_report(rep, verify_flags.out);
            print_summary(verify_id, nlohmann::json::parse(phl::report_json(rep)));
            return rep.pass ? 0 : 1;
        }
        if (*report) {
            int found = 0;
            bool all_pass = true;
            for (auto id : phl::all_experiments()) {
                auto name = phl::to_string(id);
                auto path = std::filesystem::path(report_flags.out) / (name + ".json");
                if (!std::filesystem::exists(path))
                    continue;
                std::ifstream in(path);
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(in);
                } catch (const nlohmann::json::exception& e) {
                    throw std::runtime_error(path.string() + ": " + e.what());
                }
                print_summary(name, j);
                all_pass = all_pass && j.at("pass").get<bool>();
                ++found;
            }
            if (found == 0) {
                std::fprintf(stderr, "no reports found in %s\n", report_flags.out.c_str());
                return 2;
            }
            return all_pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
