#include "phl/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "phl/atoms.hpp"
#include "phl/cesaro.hpp"
#include "phl/hardy.hpp"
#include "phl/potentials.hpp"
#include "phl/spectral.hpp"
#include "phl/square_fn.hpp"

namespace phl {

namespace {

struct IdName {
    ExperimentId id;
    const char* name;
};

constexpr IdName kIds[] = {
    {ExperimentId::hls, "hls"},
    {ExperimentId::hardy_littlewood, "hardy-littlewood"},
    {ExperimentId::cesaro_hardy, "cesaro-hardy"},
    {ExperimentId::cesaro_lp, "cesaro-lp"},
    {ExperimentId::iterated_hilbert, "iterated-hilbert"},
    {ExperimentId::uchiyama, "uchiyama"},
    {ExperimentId::majorization, "majorization"},
    {ExperimentId::counterexample, "counterexample"},
    {ExperimentId::sq_vs_max, "sq-vs-max"},
};

template <class T>
T parse_number(const std::string& key, const std::string& s)
{
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad value for " + key + ": '" + s + "'");
    return v;
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        out.push_back(trim(cur));
    return out;
}

// ---- oracles ---------------------------------------------------------------

// Riesz potential at the origin of exp(-pi x^2) - s^-1 exp(-pi x^2 / s^2),
// whose value is Gamma(beta/2) pi^(-beta/2) (1 - s^(beta-1)).
OracleCheck riesz_gaussian_oracle(double beta)
{
    const double s = 2.0;
    auto g = make_grid(1, 4096, 32.0);
    const double c = g.coord(0, g.n(0) / 2); // sample placed at the bump center
    auto f = sample_fn(g, [&](std::span<const double> x) {
        double y = x[0] - c;
        return std::exp(-std::numbers::pi * y * y) - std::exp(-std::numbers::pi * y * y / (s * s)) / s;
    });
    auto r = riesz_axis(f, 0, RieszOrder(beta));
    OracleCheck o;
    o.name = "riesz potential of a Gaussian difference at its center";
    o.value = r.field[g.n(0) / 2].real();
    o.reference = std::tgamma(beta / 2.0) * std::pow(std::numbers::pi, -beta / 2.0) * (1.0 - std::pow(s, beta - 1.0));
    o.abs_error = std::abs(o.value - o.reference);
    return o;
}

// Hardy-Littlewood functional of the Mexican hat (1 - 2 pi x^2) exp(-pi x^2),
// whose transform is 2 pi xi^2 exp(-pi xi^2):
//   Phi_p^p = (2 pi)^p Gamma((3p - 1)/2) (p pi)^(-(3p - 1)/2), p > 1/3.
// Near p = 1/3 the integrand is barely integrable, so small p falls back to 1.
OracleCheck hardy_littlewood_oracle(double p)
{
    if (p < 0.5)
        p = 1.0;
    auto g = make_grid(1, 8192, 64.0);
    auto f = sample_fn(g, [](std::span<const double> x) {
        return (1.0 - 2.0 * std::numbers::pi * x[0] * x[0]) * std::exp(-std::numbers::pi * x[0] * x[0]);
    });
    const double e = (3.0 * p - 1.0) / 2.0;
    OracleCheck o;
    o.name = "hardy-littlewood functional of the Mexican hat";
    o.value = hardy_littlewood_functional(f, p, WeightMode::product);
    o.reference = std::pow(std::pow(2.0 * std::numbers::pi, p) * std::tgamma(e) * std::pow(p * std::numbers::pi, -e),
                           1.0 / p);
    o.abs_error = std::abs(o.value - o.reference);
    return o;
}

// Integral of the Hardy-Cesaro average of chi_(0,1] - chi_(1,2]: 2 ln 2.
OracleCheck cesaro_oracle()
{
    auto g = make_grid(1, 4096, 8.0);
    OracleCheck o;
    o.name = "integral of the Cesaro average of chi_(0,1] - chi_(1,2]";
    o.value = hardy_cesaro(counterexample_field(g)).integral().real();
    o.reference = 2.0 * std::numbers::ln2;
    o.abs_error = std::abs(o.value - o.reference);
    return o;
}

// Hilbert transform of 1/(1+x^2) is x/(1+x^2); largest error on |x| <= 4.
OracleCheck hilbert_oracle()
{
    auto g = make_grid(1, 4096, 64.0);
    auto f = sample_fn(g, [](std::span<const double> x) { return 1.0 / (1.0 + x[0] * x[0]); });
    auto hf = hilbert_axis(f, 0);
    OracleCheck o;
    o.name = "hilbert transform of 1/(1+x^2) on |x| <= 4";
    for (std::size_t k = 0; k < g.n(0); ++k) {
        double x = g.coord(0, k);
        if (std::abs(x) > 4.0)
            continue;
        double err = std::abs(hf[k].real() - x / (1.0 + x * x));
        if (err > o.abs_error) {
            o.abs_error = err;
            o.value = hf[k].real();
            o.reference = x / (1.0 + x * x);
        }
    }
    return o;
}

// Poisson maximal function of P_1: P_1(x) for |x| <= 1, 1/(2 pi |x|) beyond.
OracleCheck poisson_oracle()
{
    auto g = make_grid(1, 4096, 256.0);
    auto poisson = [](double t, double x) { return t / (std::numbers::pi * (t * t + x * x)); };
    auto f = sample_fn(g, [&](std::span<const double> x) { return poisson(1.0, x[0]); });
    // The optimal scale |x| - 1 tends to 0 near |x| = 1: reach below h.
    auto m = maximal(f, ScaleLadder(-10, 8, 16), MaximalMode::radial);
    OracleCheck o;
    o.name = "poisson maximal function of P_1 on |x| <= 8";
    for (std::size_t k = 0; k < g.n(0); ++k) {
        double x = g.coord(0, k);
        if (std::abs(x) > 8.0)
            continue;
        double ref = std::abs(x) <= 1.0 ? poisson(1.0, x) : 1.0 / (2.0 * std::numbers::pi * std::abs(x));
        double err = std::abs(m[k].real() - ref);
        if (err > o.abs_error) {
            o.abs_error = err;
            o.value = m[k].real();
            o.reference = ref;
        }
    }
    return o;
}

// ---- experiment bodies -------------------------------------------------------

struct Context {
    const ExperimentConfig& cfg;
    GridSpec grid;
    ScaleLadder ladder;
    ConeQuadrature cone;
    MaximalMode mode;

    double hardy(const Field& f, double p) const { return hardy_norm_estimate(f, p, ladder, mode); }
};

std::vector<int> all_axes(int d)
{
    std::vector<int> a(d);
    for (int i = 0; i < d; ++i)
        a[i] = i;
    return a;
}

// (sum over subsets S of the axes of ||H_S f||_p^p)^(1/p); S = {} gives ||f||_p.
double hilbert_family_norm(const Field& f, double p)
{
    const int d = f.grid().dim();
    double sum = 0.0;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        std::vector<int> axes;
        for (int i = 0; i < d; ++i)
            if (mask & (1u << i))
                axes.push_back(i);
        Field g = axes.empty() ? f : iterated_hilbert(f, axes);
        sum += std::pow(lp_quasinorm(g, p), p);
    }
    return std::pow(sum, 1.0 / p);
}

void check_finite(const ReportRow& r)
{
    if (!std::isfinite(r.lhs) || !std::isfinite(r.rhs) || !std::isfinite(r.ratio))
        throw std::runtime_error("member " + r.id + ": non-finite value (lhs " + std::to_string(r.lhs) + ", rhs "
                                 + std::to_string(r.rhs) + ")");
}

ExperimentReport run_counterexample(const ExperimentConfig& cfg)
{
    ExperimentReport rep;
    rep.config = cfg;
    auto g = cfg.grid();
    auto f = counterexample_field(g);
    ReportRow row;
    row.id = "counterexample";
    row.lhs = std::abs(hardy_cesaro(f).integral().real());
    row.rhs = g.spacing(0);
    row.ratio = row.lhs / row.rhs;
    check_finite(row);
    rep.rows.push_back(row);
    rep.oracle = cesaro_oracle();
    summarize(rep);
    double mean_f = std::abs(f.integral().real());
    rep.pass = rep.pass && row.lhs > 1.0 && mean_f <= g.spacing(0);
    return rep;
}

} // namespace

std::string to_string(ExperimentId id)
{
    for (const auto& e : kIds)
        if (e.id == id)
            return e.name;
    return "unknown";
}

ExperimentId parse_experiment_id(const std::string& name)
{
    for (const auto& e : kIds)
        if (name == e.name)
            return e.id;
    throw std::invalid_argument("unknown experiment '" + name + "'");
}

std::vector<ExperimentId> all_experiments()
{
    std::vector<ExperimentId> v;
    for (const auto& e : kIds)
        v.push_back(e.id);
    return v;
}

ExperimentConfig ExperimentConfig::defaults(ExperimentId id)
{
    ExperimentConfig c;
    c.id = id;
    switch (id) {
    case ExperimentId::hls:
        c.alpha = 0.5;
        break;
    case ExperimentId::hardy_littlewood:
    case ExperimentId::uchiyama:
        c.gate = 1e2;
        break;
    case ExperimentId::sq_vs_max:
        c.gate = 50.0;
        break;
    case ExperimentId::counterexample:
        c.n = {4096};
        c.half_width = {8.0};
        break;
    default:
        break;
    }
    if (id == ExperimentId::uchiyama || id == ExperimentId::counterexample)
        c.d = 1;
    return c;
}

GridSpec ExperimentConfig::grid() const
{
    std::vector<std::size_t> nn = n;
    std::vector<double> ll = half_width;
    if (nn.empty())
        nn = d == 1 ? std::vector<std::size_t>{4096} : d == 2 ? std::vector<std::size_t>{1024, 256}
                                                              : std::vector<std::size_t>(d, 128);
    if (ll.empty())
        ll = d == 1 ? std::vector<double>{32.0} : d == 2 ? std::vector<double>{32.0, 8.0} : std::vector<double>(d, 8.0);
    if (nn.size() == 1)
        nn.assign(d, nn[0]);
    if (ll.size() == 1)
        ll.assign(d, ll[0]);
    return make_grid(d, nn, ll);
}

double ExperimentConfig::q() const { return 1.0 / (1.0 / p - alpha / d); }

void ExperimentConfig::validate() const
{
    if (d < 1 || d > kMaxDim)
        throw std::invalid_argument("d must be 1, 2 or 3");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("p must lie in (0, 1]");
    if (!(gate >= 1.0))
        throw std::invalid_argument("gate must be at least 1");
    if (static_cast<int>(n.size()) > 1 && static_cast<int>(n.size()) != d)
        throw std::invalid_argument("grid n lists " + std::to_string(n.size()) + " axes but d = " + std::to_string(d));
    if (static_cast<int>(half_width.size()) > 1 && static_cast<int>(half_width.size()) != d)
        throw std::invalid_argument("grid L lists " + std::to_string(half_width.size())
                                    + " axes but d = " + std::to_string(d));
    if (id == ExperimentId::hls) {
        if (!(alpha > 0.0 && alpha < d))
            throw std::invalid_argument("alpha must lie in (0, d)");
        if (!(1.0 / p - alpha / d > 0.0))
            throw std::invalid_argument("incompatible exponents: 1/p - alpha/d must be positive");
    }
    if ((id == ExperimentId::uchiyama || id == ExperimentId::counterexample) && d != 1)
        throw std::invalid_argument(to_string(id) + " runs in one dimension only");
    if (estimator != "maximal" && estimator != "square")
        throw std::invalid_argument("estimator must be 'maximal' or 'square'");
    if (rhs != "hardy" && rhs != "hilbert")
        throw std::invalid_argument("rhs must be 'hardy' or 'hilbert'");
    if (ladder_substeps < 1)
        throw std::invalid_argument("ladder_substeps must be positive");
}

void apply_grid_setting(ExperimentConfig& cfg, const std::string& value)
{
    std::vector<std::size_t> n;
    std::vector<double> L;
    for (const auto& part : split(value, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("grid: expected n=... or L=..., got '" + part + "'");
        auto key = trim(part.substr(0, eq));
        auto axes = split(part.substr(eq + 1), 'x');
        if (key == "n") {
            n.clear();
            for (const auto& a : axes)
                n.push_back(parse_number<std::size_t>("grid n", a));
        } else if (key == "L") {
            L.clear();
            for (const auto& a : axes)
                L.push_back(parse_number<double>("grid L", a));
        } else {
            throw std::invalid_argument("grid: unknown key '" + key + "'");
        }
    }
    if (!n.empty())
        cfg.n = n;
    if (!L.empty())
        cfg.half_width = L;
    auto axes = std::max(cfg.n.size(), cfg.half_width.size());
    if (axes > 1)
        cfg.d = static_cast<int>(axes);
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& raw)
{
    const std::string value = trim(raw);
    auto& c = cfg.corpus;
    if (key == "d")
        cfg.d = parse_number<int>(key, value);
    else if (key == "p")
        cfg.p = parse_number<double>(key, value);
    else if (key == "alpha")
        cfg.alpha = parse_number<double>(key, value);
    else if (key == "seed")
        cfg.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "gate")
        cfg.gate = parse_number<double>(key, value);
    else if (key == "grid")
        apply_grid_setting(cfg, value);
    else if (key == "ladder_jmin")
        cfg.ladder_jmin = parse_number<int>(key, value);
    else if (key == "ladder_jmax")
        cfg.ladder_jmax = parse_number<int>(key, value);
    else if (key == "ladder_substeps")
        cfg.ladder_substeps = parse_number<int>(key, value);
    else if (key == "cone_jmin")
        cfg.cone_jmin = parse_number<int>(key, value);
    else if (key == "cone_jmax")
        cfg.cone_jmax = parse_number<int>(key, value);
    else if (key == "atoms_1d")
        c.atoms_1d = parse_number<int>(key, value);
    else if (key == "scale_count")
        c.scale_count = parse_number<int>(key, value);
    else if (key == "aspect_count")
        c.aspect_count = parse_number<int>(key, value);
    else if (key == "rect_per_cell")
        c.rect_per_cell = parse_number<int>(key, value);
    else if (key == "cf_count")
        c.cf_count = parse_number<int>(key, value);
    else if (key == "cf_min_rects")
        c.cf_min_rects = parse_number<int>(key, value);
    else if (key == "cf_max_rects")
        c.cf_max_rects = parse_number<int>(key, value);
    else if (key == "scale_exponents") {
        c.scale_exponents.clear();
        for (const auto& s : split(value, ','))
            c.scale_exponents.push_back(parse_number<int>(key, s));
    } else if (key == "estimator")
        cfg.estimator = value;
    else if (key == "rhs")
        cfg.rhs = value;
    else
        throw std::invalid_argument("unknown setting '" + key + "'");
}

void load_config_file(ExperimentConfig& cfg, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        try {
            apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

ExperimentReport run_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    if (cfg.id == ExperimentId::counterexample)
        return run_counterexample(cfg);

    auto grid = cfg.grid();
    auto covering = ScaleLadder::covering(grid, cfg.ladder_substeps);
    ScaleLadder ladder(cfg.ladder_jmin.value_or(covering.j_min()), cfg.ladder_jmax.value_or(covering.j_max()),
                       cfg.ladder_substeps);
    auto cone_cover = ConeQuadrature::covering(grid);
    ConeQuadrature cone(cfg.cone_jmin.value_or(cone_cover.j_min()), cfg.cone_jmax.value_or(cone_cover.j_max()));
    Context ctx{cfg, grid, ladder, cone, cfg.d == 1 ? MaximalMode::radial : MaximalMode::product};

    CorpusConfig cc = cfg.corpus;
    cc.p = cfg.p;
    cc.seed = cfg.seed;
    auto corpus = build_corpus(cc, grid);

    std::optional<AnalyzingWavelet> psi;
    bool needs_psi = cfg.id == ExperimentId::sq_vs_max
                     || (cfg.id == ExperimentId::uchiyama && cfg.estimator == "square");
    if (needs_psi)
        psi = build_psi(moment_order(cfg.p));

    ExperimentReport rep;
    rep.config = cfg;
    const double p = cfg.p;
    for (const auto& m : corpus) {
        const Field& a = m.field;
        ReportRow row;
        row.id = m.id;
        switch (cfg.id) {
        case ExperimentId::hls:
            row.lhs = ctx.hardy(product_fractional(a, cfg.alpha).field, cfg.q());
            row.rhs = ctx.hardy(a, p);
            break;
        case ExperimentId::hardy_littlewood:
            row.lhs = hardy_littlewood_functional(a, p, WeightMode::product);
            row.rhs = cfg.rhs == "hilbert" ? hilbert_family_norm(a, p) : ctx.hardy(a, p);
            break;
        case ExperimentId::cesaro_hardy:
            row.lhs = cesaro_hardy_lhs(a, p, CesaroMode::on_fourier);
            row.rhs = ctx.hardy(a, p);
            break;
        case ExperimentId::cesaro_lp:
            row.lhs = cesaro_hardy_lhs(a, p, CesaroMode::direct);
            row.rhs = ctx.hardy(a, p);
            break;
        case ExperimentId::iterated_hilbert:
            row.lhs = ctx.hardy(iterated_hilbert(a, all_axes(cfg.d)), p);
            row.rhs = ctx.hardy(a, p);
            break;
        case ExperimentId::uchiyama:
            row.lhs = cfg.estimator == "square" ? sq_norm_estimate(a, p, *psi, cone) : ctx.hardy(a, p);
            row.rhs = uchiyama_rhs(a, p);
            break;
        case ExperimentId::majorization:
            row.lhs = lp_quasinorm(a, p);
            row.rhs = ctx.hardy(a, p);
            break;
        case ExperimentId::sq_vs_max:
            row.lhs = sq_norm_estimate(a, p, *psi, cone);
            row.rhs = ctx.hardy(a, p);
            break;
        case ExperimentId::counterexample:
            break;
        }
        row.ratio = row.lhs / row.rhs;
        check_finite(row);
        rep.rows.push_back(row);
    }

    switch (cfg.id) {
    case ExperimentId::hls:
        rep.oracle = riesz_gaussian_oracle(cfg.alpha / cfg.d);
        break;
    case ExperimentId::hardy_littlewood:
        rep.oracle = hardy_littlewood_oracle(cfg.p);
        break;
    case ExperimentId::cesaro_hardy:
    case ExperimentId::cesaro_lp:
        rep.oracle = cesaro_oracle();
        break;
    case ExperimentId::iterated_hilbert:
    case ExperimentId::uchiyama:
        rep.oracle = hilbert_oracle();
        break;
    default:
        rep.oracle = poisson_oracle();
        break;
    }
    summarize(rep);
    return rep;
}

} // namespace phl
