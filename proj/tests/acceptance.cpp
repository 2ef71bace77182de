// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails. argv[1] is a scratch directory for CLI outputs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "oracles.hpp"
#include "phl/atoms.hpp"
#include "phl/cesaro.hpp"
#include "phl/corpus.hpp"
#include "phl/experiment.hpp"
#include "phl/hardy.hpp"
#include "phl/potentials.hpp"
#include "phl/spectral.hpp"
#include "phl/square_fn.hpp"
#include "support.hpp"

using namespace phl;
using testing_support::band_limited;
using testing_support::max_abs;
using testing_support::max_abs_diff;
using testing_support::random_complex;
using testing_support::random_real;

namespace {

namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    // Records a "<what> = value (<= limit)" clause and folds it into pass.
    void check_le(const std::string& what, double value, double limit)
    {
        bool ok = std::isfinite(value) && value <= limit;
        pass = pass && ok;
        sep();
        detail << what << " " << value << (ok ? " <= " : " > ") << limit;
    }
    void check(const std::string& what, bool ok)
    {
        pass = pass && ok;
        sep();
        detail << what << (ok ? " ok" : " FAILED");
    }
    void note(const std::string& s)
    {
        sep();
        detail << s;
    }

private:
    void sep()
    {
        if (detail.tellp() > 0)
            detail << "; ";
    }
};

fs::path g_out;

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GridSpec grid2(std::size_t n0, std::size_t n1, double L0, double L1)
{
    std::size_t n[] = {n0, n1};
    double L[] = {L0, L1};
    return make_grid(2, n, L);
}

int run_cli(const std::string& args)
{
    std::string cmd = std::string(PHL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

void spread_check(Outcome& o, const std::string& label, const ExperimentReport& r, double gate)
{
    bool finite = true;
    for (const auto& row : r.rows)
        finite = finite && std::isfinite(row.ratio);
    o.check(label + " all " + std::to_string(r.rows.size()) + " ratios finite", finite);
    o.check_le(label + " spread", r.spread, gate);
    o.note(label + " min/median/max " + fmt(r.min) + "/" + fmt(r.median) + "/" + fmt(r.max));
}

// 1. FFT round trip, Hilbert algebra, multiplier composition, runtime.
Outcome ac1()
{
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto g1 = make_grid(1, 4096, 16.0);
    auto g2 = make_grid(2, 512, 8.0);

    double rt = 0.0;
    for (const auto& g : {g1, g2}) {
        for (std::uint64_t s = 0; s < 2; ++s) {
            auto f = s ? random_complex(g, s) : random_real(g, s);
            rt = std::max(rt, max_abs_diff(inverse_ft(forward_ft(f)), f) / max_abs(f));
        }
    }
    o.check_le("round trip rel", rt, 1e-12);

    double hh = 0.0;
    auto b1 = band_limited(g1, 1000, 1);
    hh = max_abs_diff(hilbert_axis(hilbert_axis(b1, 0), 0), b1.scaled(-1.0)) / max_abs(b1);
    auto b2 = band_limited(g2, 100, 2);
    for (int axis : {0, 1})
        hh = std::max(hh, max_abs_diff(hilbert_axis(hilbert_axis(b2, axis), axis), b2.scaled(-1.0)) / max_abs(b2));
    o.check_le("H^2 = -I rel", hh, 1e-10);

    int axes[] = {0, 1};
    auto h12 = iterated_hilbert(b2, axes);
    o.check_le("(H1H2)^2 = I rel", max_abs_diff(iterated_hilbert(h12, axes), b2) / max_abs(b2), 1e-10);

    MultiplierSpec m1, m2, m12;
    m1.evaluator = [](std::span<const double> xi) { return cplx(std::exp(-0.1 * std::abs(xi[0])), 0.01 * xi[1]); };
    m2.evaluator = [](std::span<const double> xi) { return cplx(1.0 / (1.0 + xi[0] * xi[0] + xi[1] * xi[1])); };
    m12.evaluator = [&](std::span<const double> xi) { return m1.evaluator(xi) * m2.evaluator(xi); };
    for (auto* m : {&m1, &m2, &m12}) {
        m->dc_policy.reset();
        m->nyquist_policy.reset();
    }
    auto f = random_complex(g2, 9);
    double comp = max_abs_diff(apply_multiplier(apply_multiplier(f, m2), m1), apply_multiplier(f, m12)) / max_abs(f);
    o.check_le("composition rel", comp, 1e-10);
    o.check_le("runtime s", seconds_since(t0), 10.0);
    return o;
}

// 2. Riesz potential against singular quadrature; semigroup.
Outcome ac2()
{
    Outcome o;
    const double r = 2.0;
    const double beta = 0.25;
    auto g = make_grid(1, 4096, 32.0);
    auto f = sample_fn(g, [&](std::span<const double> x) { return oracles::bump_dd(x[0], r); });
    auto out = riesz_axis(f, 0, RieszOrder(beta)).field;
    double err = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < g.n(0); k += 8) {
        double x = g.coord(0, k);
        if (std::abs(x) > 8.0)
            continue;
        double ref = oracles::riesz_quadrature(x, r, beta);
        err = std::max(err, std::abs(out[k].real() - ref));
        scale = std::max(scale, std::abs(ref));
    }
    o.check_le("quadrature sup rel (|x| <= 8)", err / scale, 1e-3);

    auto gb = make_grid(1, 4096, 16.0);
    const double c = riesz_constant(0.2) * riesz_constant(0.2) / riesz_constant(0.4);
    double semi = 0.0;
    for (std::uint64_t s = 0; s < 3; ++s) {
        auto b = band_limited(gb, 500, s);
        auto twice = riesz_axis(riesz_axis(b, 0, RieszOrder(0.2)).field, 0, RieszOrder(0.2)).field;
        auto once = riesz_axis(b, 0, RieszOrder(0.4)).field.scaled(c);
        semi = std::max(semi, max_abs_diff(twice, once) / max_abs(once));
    }
    o.check_le("semigroup rel", semi, 1e-8);
    return o;
}

// 3. H(1/(1+x^2)) = x/(1+x^2).
Outcome ac3()
{
    Outcome o;
    auto g = make_grid(1, 4096, 64.0);
    auto f = sample_fn(g, [](std::span<const double> x) { return 1.0 / (1.0 + x[0] * x[0]); });
    auto hf = hilbert_axis(f, 0);
    double window = 0.0;
    double periodized = 0.0;
    const double T = 128.0;
    const double w = 2.0 * pi / T;
    for (std::size_t k = 0; k < g.n(0); ++k) {
        double x = g.coord(0, k);
        if (std::abs(x) <= 4.0)
            window = std::max(window, std::abs(hf[k].real() - x / (1.0 + x * x)));
        double per = (pi / T) * std::sin(w * x) / (std::cosh(w) - std::cos(w * x));
        periodized = std::max(periodized, std::abs(hf[k].real() - per));
    }
    o.check_le("sup error on |x| <= 4", window, 1e-3);
    o.note("whole grid vs periodized closed form " + fmt(periodized));
    return o;
}

// 4. Poisson maximal closed form, product factorization, domination.
Outcome ac4()
{
    Outcome o;
    auto g = make_grid(1, 4096, 256.0);
    auto f = sample_fn(g, [](std::span<const double> x) { return oracles::poisson(1.0, x[0]); });
    auto m = maximal(f, ScaleLadder(-10, 8, 16), MaximalMode::radial);
    double err = 0.0;
    for (std::size_t k = 0; k < g.n(0); ++k) {
        double x = g.coord(0, k);
        if (std::abs(x) <= 8.0)
            err = std::max(err, std::abs(m[k].real() - oracles::poisson_maximal(x)));
    }
    o.check_le("closed form abs err (|x| <= 8)", err, 1e-4);

    auto g2 = grid2(256, 128, 8.0, 4.0);
    auto gx = make_grid(1, 256, 8.0);
    auto gy = make_grid(1, 128, 4.0);
    ScaleLadder ladder(-5, 3);
    std::vector<Field> parts = {random_real(gx, 1), random_real(gy, 2)};
    auto mp = maximal(tensor_product(g2, parts), ladder, MaximalMode::product);
    std::vector<Field> mparts = {maximal(parts[0], ladder, MaximalMode::radial),
                                 maximal(parts[1], ladder, MaximalMode::radial)};
    auto expect = tensor_product(g2, mparts);
    o.check_le("product factorization rel", max_abs_diff(mp, expect) / max_abs(expect), 1e-10);

    bool dominates = true;
    for (const auto& g : {make_grid(1, 1024, 8.0), grid2(128, 64, 4.0, 2.0)}) {
        auto r = random_real(g, 5);
        for (auto mode : {MaximalMode::radial, MaximalMode::product}) {
            auto mx = maximal(r, ScaleLadder::covering(g), mode);
            for (std::size_t k = 0; k < r.size(); ++k)
                dominates = dominates && mx[k].real() >= std::abs(r[k]);
        }
    }
    o.check("maximal >= |f| pointwise", dominates);
    return o;
}

// 5. Counterexample to H^p membership of the Cesaro average.
Outcome ac5()
{
    Outcome o;
    auto g = make_grid(1, 4096, 8.0);
    auto f = counterexample_field(g);
    double mean_h = hardy_cesaro(f).integral().real();
    o.check_le("|mean(Hf) - 2 ln 2|", std::abs(mean_h - 2.0 * std::numbers::ln2), 1e-4);
    o.check_le("|mean(f)|", std::abs(f.integral().real()), g.spacing(0));
    o.check("verify counterexample exit 0", run_cli("verify counterexample --out " + (g_out / "ac5").string()) == 0);
    return o;
}

// 6. Product HLS on the d = 2 corpus.
Outcome ac6()
{
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto cfg = ExperimentConfig::defaults(ExperimentId::hls);
    CorpusConfig cc = cfg.corpus;
    cc.p = cfg.p;
    cc.seed = cfg.seed;
    auto corpus = build_corpus(cc, cfg.grid());
    int rect = 0, cf = 0;
    std::set<int> scales, aspects;
    for (const auto& m : corpus) {
        if (m.kind == AtomKind::cf) {
            ++cf;
            continue;
        }
        ++rect;
        const auto& r = m.rectangles[0];
        double lo = std::min(r.side[0], r.side[1]);
        double hi = std::max(r.side[0], r.side[1]);
        scales.insert(static_cast<int>(std::lround(std::log2(lo))));
        aspects.insert(static_cast<int>(std::lround(std::log2(hi / lo))));
    }
    o.check("corpus " + std::to_string(rect) + " rect (" + std::to_string(scales.size()) + " scales x "
                + std::to_string(aspects.size()) + " aspects) + " + std::to_string(cf) + " CF",
            rect >= 32 && scales.size() >= 4 && aspects.size() >= 4 && cf >= 8);
    auto rep = run_experiment(cfg);
    o.note("q = " + fmt(cfg.q()));
    spread_check(o, "hls", rep, 1e3);
    o.note("median ratio " + fmt(rep.median));
    o.check_le("runtime s", seconds_since(t0), 600.0);
    return o;
}

// 7. Product Hardy-Littlewood functional; dilation slope.
Outcome ac7()
{
    Outcome o;
    for (double p : {0.7, 1.0}) {
        auto cfg = ExperimentConfig::defaults(ExperimentId::hardy_littlewood);
        cfg.p = p;
        spread_check(o, "p=" + fmt(p), run_experiment(cfg), 1e2);
    }
    auto g = make_grid(1, 8192, 64.0);
    for (double p : {0.7, 1.0}) {
        std::vector<double> lx, ly;
        for (double lambda : {1.0, 2.0, 4.0}) {
            auto f = sample_fn(g, [&](std::span<const double> x) { return oracles::mexican_hat(lambda * x[0]); });
            lx.push_back(std::log(lambda));
            ly.push_back(std::log(hardy_littlewood_functional(f, p, WeightMode::product)));
        }
        double mx = (lx[0] + lx[1] + lx[2]) / 3.0;
        double my = (ly[0] + ly[1] + ly[2]) / 3.0;
        double sxy = 0.0, sxx = 0.0;
        for (int i = 0; i < 3; ++i) {
            sxy += (lx[i] - mx) * (ly[i] - my);
            sxx += (lx[i] - mx) * (lx[i] - mx);
        }
        double slope = sxy / sxx;
        o.check_le("p=" + fmt(p) + " slope " + fmt(slope) + " rel dev from -1/p", std::abs(slope * p + 1.0), 0.02);
    }
    return o;
}

// 8. Iterated Hilbert transform on H^p.
Outcome ac8()
{
    Outcome o;
    spread_check(o, "iterated-hilbert", run_experiment(ExperimentConfig::defaults(ExperimentId::iterated_hilbert)),
                 1e3);
    return o;
}

// 9. Two-sided Uchiyama comparison in one dimension.
Outcome ac9()
{
    Outcome o;
    for (const std::string est : {"maximal", "square"}) {
        auto cfg = ExperimentConfig::defaults(ExperimentId::uchiyama);
        cfg.estimator = est;
        auto rep = run_experiment(cfg);
        o.check(est + " corpus >= 32 atoms", rep.rows.size() >= 32);
        spread_check(o, est, rep, 1e2);
    }
    return o;
}

// 10. Hardy-Cesaro functionals and the exactness suite.
Outcome ac10()
{
    Outcome o;
    spread_check(o, "cesaro-hardy", run_experiment(ExperimentConfig::defaults(ExperimentId::cesaro_hardy)), 1e3);
    spread_check(o, "cesaro-lp", run_experiment(ExperimentConfig::defaults(ExperimentId::cesaro_lp)), 1e3);

    auto g = grid2(256, 128, 4.0, 2.0);
    auto one = sample_fn(g, [](std::span<const double>) { return 1.0; });
    auto h1 = hardy_cesaro(one);
    double cerr = 0.0;
    for (auto v : h1.values())
        cerr = std::max(cerr, std::abs(v - 1.0));
    o.check_le("constants", cerr, 1e-15);

    auto g1 = make_grid(1, 1024, 4.0);
    auto lin = hardy_cesaro(sample_fn(g1, [](std::span<const double> x) { return x[0]; }));
    double lerr = 0.0;
    for (std::size_t k = 0; k < g1.n(0); ++k) {
        double x = g1.coord(0, k);
        if (std::abs(x) >= 0.5)
            lerr = std::max(lerr, std::abs(lin[k].real() - x / 2.0));
    }
    double h = g1.spacing(0);
    o.check_le("linear err / h^2 (|x| >= 1/2)", lerr / (h * h), 0.25 + 1e-9);

    std::vector<Field> parts = {random_real(make_grid(1, 256, 4.0), 1), random_real(make_grid(1, 128, 2.0), 2)};
    std::vector<Field> hparts = {hardy_cesaro(parts[0]), hardy_cesaro(parts[1])};
    auto expect = tensor_product(g, hparts);
    o.check_le("separable rel", max_abs_diff(hardy_cesaro(tensor_product(g, parts)), expect) / max_abs(expect),
               1e-12);
    return o;
}

// 11. Square function vs maximal estimator; S-function brute force.
Outcome ac11()
{
    Outcome o;
    spread_check(o, "sq-vs-max", run_experiment(ExperimentConfig::defaults(ExperimentId::sq_vs_max)), 50.0);

    auto g = make_grid(1, 256, 4.0);
    auto psi = build_psi(0);
    auto quad = ConeQuadrature::covering(g);
    auto f = random_real(g, 21);
    auto s = s_function(f, psi, quad);
    std::vector<std::size_t> points = {3, 128, 200};
    auto brute = oracles::s_function_squared(f, psi, quad, points);
    double err = 0.0;
    for (std::size_t p = 0; p < points.size(); ++p) {
        double ref = std::sqrt(brute[p]);
        err = std::max(err, std::abs(s[points[p]].real() - ref) / ref);
    }
    o.check_le("brute-force S rel (n = 256)", err, 1e-10);
    return o;
}

// 12. Byte-identical reports on rerun, for every experiment id.
Outcome ac12()
{
    Outcome o;
    const std::string small2 = " --grid n=256x64,L=8x2 --set scale_count=2 --set aspect_count=2 --set cf_count=2";
    const std::string small1 = " --grid n=1024,L=16 --set atoms_1d=6";
    for (auto id : all_experiments()) {
        auto name = to_string(id);
        std::string extra = ExperimentConfig::defaults(id).d == 1 ? small1 : small2;
        if (id == ExperimentId::counterexample)
            extra.clear();
        auto a = g_out / "ac12" / "a";
        auto b = g_out / "ac12" / "b";
        int ra = run_cli("verify " + name + " --out " + a.string() + extra);
        int rb = run_cli("verify " + name + " --out " + b.string() + extra);
        bool ran = (ra == 0 || ra == 1) && ra == rb && fs::exists(a / (name + ".csv"));
        bool same = ran && slurp(a / (name + ".csv")) == slurp(b / (name + ".csv"))
                    && slurp(a / (name + ".json")) == slurp(b / (name + ".json"));
        o.check(name, same);
    }
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    g_out = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "phl_acceptance";
    fs::remove_all(g_out);
    fs::create_directories(g_out);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"AC1 spectral algebra", ac1},
        {"AC2 riesz oracle", ac2},
        {"AC3 hilbert closed form", ac3},
        {"AC4 poisson maximal", ac4},
        {"AC5 cesaro counterexample", ac5},
        {"AC6 product HLS", ac6},
        {"AC7 product hardy-littlewood", ac7},
        {"AC8 iterated hilbert", ac8},
        {"AC9 uchiyama", ac9},
        {"AC10 hardy-cesaro", ac10},
        {"AC11 square vs maximal", ac11},
        {"AC12 determinism", ac12},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note(std::string("exception: ") + e.what());
        }
        failed += o.pass ? 0 : 1;
        std::printf("[%s] %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), seconds_since(t0),
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
