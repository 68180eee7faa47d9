#include "cli_support.hpp"

#include "lfmax/analysis.hpp"
#include "lfmax/ensembles.hpp"
#include "lfmax/errors.hpp"
#include "lfmax/families.hpp"
#include "lfmax/mathfn.hpp"
#include "lfmax/montecarlo.hpp"
#include "lfmax/parallel.hpp"
#include "lfmax/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace lfmax;
using namespace lfmax::cli;

namespace {

constexpr const char* kVersion = "0.1.0";

// Defaults per subcommand. Every key a config file or -s flag may set is here.
const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& defaults() {
    static const std::map<std::string, std::vector<std::pair<std::string, std::string>>> d = {
        {"tail",
         {{"kind", "unitary"}, {"N", "50"}, {"lambda", "0.3"}, {"log_K", ""}, {"trials", "100000"},
          {"seed", "7"}, {"statistic", "at_point_zero"}}},
        {"maxens",
         {{"kind", "unitary"}, {"N", "100"}, {"M", "22026"}, {"repeats", "20"}, {"seed", "11"},
          {"statistic", "max_over_theta"}}},
        {"primes", {{"X", "10000"}, {"trials", "100000"}, {"seed", "3"}}},
        {"zeros", {{"t_max", "1000"}}},
        {"scan", {{"t0", "0"}, {"t1", "100"}, {"A", "0.5"}, {"segments", "10"}, {"zeros", ""}}},
        {"hybrid",
         {{"t", "100,200,300,400,500"}, {"X", "10,20,40"}, {"smoothing", "bump"}, {"window", ""},
          {"n_constant", "1.7810724179901979"}, {"zeros", ""}}},
        {"stat", {{"t0", "10"}, {"t1", "1000"}, {"points", "1000"}, {"zeros", ""}}},
        {"moments",
         {{"log_T", "10000,100000000"}, {"k", "0.5,1,1.5,2,3"}, {"N", "10,20,50,100"}, {"s", "0.5,1,2"},
          {"delta", "0.3,0.5,0.8"}}},
        {"bounds", {{"log_T", "100000000"}, {"C", "1"}, {"c_lower", "2.7284271247461903,2.9284271247461903"}}},
        {"saddle", {{"log_T", "100000000"}, {"alpha", "0.1,0.25,0.4"}, {"d", "0.5,0.7071067811865476,1"}}},
        {"family", {{"D_max", "10000"}, {"tol", "1e-8"}, {"dump", "false"}}},
    };
    return d;
}

KeyTable key_table() {
    KeyTable t;
    for (const auto& [sec, kv] : defaults())
        for (const auto& [k, v] : kv) t[sec].push_back(k);
    t["global"] = {};
    return t;
}

struct Run {
    std::string sub;
    Config cfg;
    unsigned workers = 0;
    fs::path dir;
    std::vector<std::string> files;

    fs::path file(const std::string& name) {
        files.push_back(name);
        return dir / name;
    }
};

std::string iso_now() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const fs::path& p, const std::string& s) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ResourceError("cannot write " + p.string());
    f << s;
}

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return (v && *v) ? v : fallback;
}

// Zero table for subcommands that need zeros up to `height`: the config key,
// then ZERO_TABLE_PATH, then computing them.
ZeroTable load_zeros(const Config& cfg, double height) {
    std::string path = cfg.str("zeros");
    if (path.empty()) path = env_or("ZERO_TABLE_PATH", "");
    if (path.empty()) return find_zeros(std::min(height, kZeroTableCap));
    ZeroTable z = ingest_zero_table(path);
    if (z.t_max < height)
        throw DomainError("zero table " + path + " covers (0, " + fmt(z.t_max) + "] but " + fmt(height) + " is needed");
    return z;
}

json to_json(double v) {
    if (std::isfinite(v)) return v;
    return fmt(v);
}

// ---- subcommands ----

void cmd_tail(Run& r) {
    const Config& c = r.cfg;
    ExperimentConfig e;
    e.kind = kind_from_string(c.str("kind"));
    e.N = static_cast<int>(c.integer("N"));
    e.trials = c.integer("trials");
    e.root_seed = static_cast<std::uint64_t>(c.integer("seed"));
    e.statistic = statistic_from_string(c.str("statistic"));
    e.workers = r.workers;

    // one row per lambda (or per log_K when those are given instead)
    bool by_k = !c.empty("log_K");
    if (by_k && !c.empty("lambda") && c.str("lambda") != defaults().at("tail")[2].second)
        throw ConfigError("tail: give lambda or log_K, not both");
    std::vector<double> levels = by_k ? c.list("log_K") : c.list("lambda");
    if (levels.empty()) throw ConfigError("tail: no lambda values");

    CsvWriter csv(r.file("tail.csv"), {"kind", "N", "statistic", "lambda", "threshold_log_K", "trials", "hits",
                                       "p_hat", "log_p_hat", "std_err_log", "predicted_log_p"});
    Series mc{"Monte Carlo log p", {}, false}, pred{"predicted rate", {}, true};
    for (double v : levels) {
        e.lambda.reset();
        e.log_K.reset();
        if (by_k)
            e.log_K = v;
        else
            e.lambda = v;
        TailEstimate t = estimate_tail(e);
        double lam = by_k ? std::nan("") : v;
        csv.cell(to_string(e.kind)).cell(std::int64_t{e.N}).cell(to_string(e.statistic)).cell(lam)
            .cell(t.threshold_log_K).cell(t.trials).cell(t.hits).cell(t.p_hat).cell(t.log_p_hat)
            .cell(t.std_err_usable ? t.std_err_log : std::nan("")).cell(t.predicted_log_p);
        csv.end_row();
        if (t.hits > 0) mc.points.push_back({t.threshold_log_K, t.log_p_hat});
        pred.points.push_back({t.threshold_log_K, t.predicted_log_p});
    }
    csv.close();
    write_svg(r.file("tail_rate.svg"), "tail probability vs large-deviation rate", "threshold", "log p", {mc, pred});
}

void cmd_maxens(Run& r) {
    const Config& c = r.cfg;
    Kind kind = kind_from_string(c.str("kind"));
    int N = static_cast<int>(c.integer("N"));
    std::int64_t M = c.integer("M"), reps = c.integer("repeats");
    auto root = static_cast<std::uint64_t>(c.integer("seed"));
    Statistic stat = statistic_from_string(c.str("statistic"));
    if (M < 1 || reps < 1) throw DomainError("maxens: M and repeats must be positive");
    if (static_cast<double>(M) * static_cast<double>(reps) > static_cast<double>(kDirectSimulationCap))
        throw ResourceError("maxens: M * repeats exceeds the direct simulation cap");

    double logM = std::log(static_cast<double>(M));
    double pred = kind == Kind::Unitary ? predicted_log_max(N, logM) : std::nan("");
    double scale = std::sqrt(logM * std::log(static_cast<double>(N)));
    CsvWriter csv(r.file("maxens.csv"), {"repeat", "seed", "kind", "N", "M", "log_max", "predicted_log_max", "scaled_diff"});
    std::vector<double> vals;
    for (std::int64_t i = 0; i < reps; ++i) {
        std::uint64_t s = trial_seed(root, static_cast<std::uint64_t>(i));
        double v = max_over_ensemble(kind, N, M, stat, s, r.workers);
        vals.push_back(v);
        csv.cell(i).cell(std::to_string(s)).cell(to_string(kind)).cell(std::int64_t{N}).cell(M).cell(v).cell(pred)
            .cell((v - pred) / scale);
        csv.end_row();
    }
    csv.close();
    std::sort(vals.begin(), vals.end());
    std::size_t n = vals.size();
    double med = n % 2 ? vals[n / 2] : 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
    CsvWriter sum(r.file("maxens_summary.csv"), {"repeats", "median_log_max", "predicted_log_max", "scaled_diff"});
    sum.cell(reps).cell(med).cell(pred).cell((med - pred) / scale);
    sum.end_row();
    sum.close();
}

void cmd_primes(Run& r) {
    const Config& c = r.cfg;
    PrimePhaseSummary s = prime_phase_sample(c.integer("X"), c.integer("trials"),
                                             static_cast<std::uint64_t>(c.integer("seed")), r.workers);
    json j;
    j["X"] = s.X;
    j["trials"] = s.trials;
    j["mean"] = to_json(s.mean);
    j["variance"] = to_json(s.variance);
    j["variance_std_err"] = to_json(s.variance_std_err);
    j["variance_target"] = to_json(s.variance_target);
    j["variance_z"] = to_json((s.variance - s.variance_target) / s.variance_std_err);
    j["excess_kurtosis"] = to_json(s.excess_kurtosis);
    write_text(r.file("primes.json"), j.dump(2) + "\n");
}

void cmd_zeros(Run& r) {
    double t_max = r.cfg.num("t_max");
    ZeroTable z = find_zeros(t_max);
    std::string s = "# zeta zeros 1/2 + i t, 0 < t <= " + fmt(t_max) + "\n# count=" + std::to_string(z.ordinates.size()) + "\n";
    for (double g : z.ordinates) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12f\n", g);
        s += buf;
    }
    write_text(r.file("zeros.txt"), s);
}

void cmd_scan(Run& r) {
    const Config& c = r.cfg;
    double t0 = c.num("t0"), t1 = c.num("t1"), A = c.num("A");
    auto segs = c.integer("segments");
    if (!(t1 > t0) || t0 < 0.0) throw DomainError("scan: need 0 <= t0 < t1");
    if (segs < 1) throw ConfigError("scan: segments must be >= 1");
    std::optional<ZeroTable> zeros;
    if (!c.empty("zeros") || !env_or("ZERO_TABLE_PATH", "").empty()) zeros = load_zeros(c, t1);

    CsvWriter csv(r.file("scan.csv"), {"t0", "t1", "argmax_t", "max_log", "conjecture_log", "ratio"});
    Series run{"running max log|zeta|", {}, true}, conj{"sqrt(1/2 log t loglog t)", {}, true};
    double best = -INFINITY, best_t = t0;
    for (std::int64_t k = 0; k < segs; ++k) {
        double a = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(segs);
        double b = k + 1 == segs ? t1 : t0 + (t1 - t0) * static_cast<double>(k + 1) / static_cast<double>(segs);
        ScanRecord s = scan_max(a, b, A, zeros ? &*zeros : nullptr, r.workers);
        if (s.max_log_abs_zeta > best) best = s.max_log_abs_zeta, best_t = s.argmax_t;
        double ratio = std::isfinite(s.conjecture_log) ? best / s.conjecture_log : std::nan("");
        csv.cell(t0).cell(b).cell(best_t).cell(best).cell(s.conjecture_log).cell(ratio);
        csv.end_row();
        run.points.push_back({b, best});
        if (std::isfinite(s.conjecture_log)) conj.points.push_back({b, s.conjecture_log});
    }
    csv.close();
    write_svg(r.file("scan.svg"), "max log|zeta(1/2+it)| against the conjectured size", "t", "log|zeta|", {run, conj});
}

void cmd_hybrid(Run& r) {
    const Config& c = r.cfg;
    auto ts = c.list("t"), Xs = c.list("X");
    if (ts.empty() || Xs.empty()) throw ConfigError("hybrid: t and X lists must be non-empty");
    std::string sm = c.str("smoothing");
    Smoothing w;
    if (sm == "bump")
        w = Smoothing::Bump;
    else if (sm == "sharp")
        w = Smoothing::Sharp;
    else
        throw ConfigError("key 'smoothing': expected bump or sharp, got '" + sm + "'");
    std::optional<double> window;
    if (!c.empty("window")) window = c.num("window");
    double ncon = c.num("n_constant");
    if (!(ncon > 0.0)) throw ConfigError("key 'n_constant' must be positive");

    double need = 0.0;
    for (double t : ts)
        for (double X : Xs) need = std::max(need, t + window.value_or(default_zero_window(X)));
    ZeroTable zeros = load_zeros(c, need);
    double Xmax = *std::max_element(Xs.begin(), Xs.end());
    VonMangoldtTable vm = sieve_von_mangoldt(static_cast<std::int64_t>(std::ceil(Xmax)));

    CsvWriter csv(r.file("hybrid.csv"), {"t", "X", "N_model", "re_P", "im_P", "re_Z", "im_Z", "re_zeta", "im_zeta",
                                         "abs_P", "abs_Z", "abs_zeta", "rel_residual"});
    for (double t : ts)
        for (double X : Xs) {
            HybridDecomposition h = hybrid_residual(t, X, zeros, vm, window, w);
            // matrix size that models zeta near height t at this X
            double n_model = std::floor(std::log(t) / (ncon * std::log(X)));
            csv.cell(t).cell(X).cell(n_model).cell(h.p_value.real()).cell(h.p_value.imag()).cell(h.z_value.real())
                .cell(h.z_value.imag()).cell(h.zeta_value.real()).cell(h.zeta_value.imag()).cell(std::abs(h.p_value))
                .cell(std::abs(h.z_value)).cell(std::abs(h.zeta_value)).cell(h.rel_residual);
            csv.end_row();
        }
    csv.close();
}

void cmd_stat(Run& r) {
    const Config& c = r.cfg;
    double t0 = c.num("t0"), t1 = c.num("t1");
    auto n = c.integer("points");
    if (!(t1 > t0) || t0 <= 0.0 || n < 2) throw DomainError("stat: need 0 < t0 < t1 and points >= 2");
    ZeroTable zeros = load_zeros(c, t1);
    CsvWriter csv(r.file("stat.csv"), {"t", "S", "conjecture_s"});
    Series ss{"S(t)", {}, true};
    for (std::int64_t i = 0; i < n; ++i) {
        double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
        double s;
        try {
            s = s_of_t(t, zeros);
        } catch (const DomainError&) {
            // landed on an ordinate; step off it
            t = std::nextafter(t, t0);
            s = s_of_t(t, zeros);
        }
        double lt = std::log(t);
        csv.cell(t).cell(s).cell(lt > 1.0 ? conjecture_curve_s(lt) : std::nan(""));
        csv.end_row();
        ss.points.push_back({t, s});
    }
    csv.close();
    write_svg(r.file("stat.svg"), "S(t)", "t", "S", {ss});
}

void cmd_moments(Run& r) {
    const Config& c = r.cfg;
    CsvWriter csv(r.file("moments.csv"), {"quantity", "param", "arg", "value"});
    for (double L : c.list("log_T"))
        for (double k : c.list("k")) {
            csv.cell(std::string("ks_log_moment")).cell(L).cell(k).cell(ks_log_moment(L, k));
            csv.end_row();
        }
    for (double Nd : c.list("N")) {
        int N = static_cast<int>(Nd);
        if (N != Nd || N < 1) throw ConfigError("key 'N': matrix sizes must be positive integers");
        for (double k : c.list("k")) {
            csv.cell(std::string("cue_log_moment")).cell(Nd).cell(k).cell(cue_log_moment(N, k));
            csv.end_row();
        }
        for (double s : c.list("s")) {
            csv.cell(std::string("sp_log_mgf")).cell(Nd).cell(s).cell(sp_log_mgf(N, s));
            csv.end_row();
            csv.cell(std::string("so_log_mgf")).cell(Nd).cell(s).cell(so_log_mgf(N, s));
            csv.end_row();
        }
        if (N < 2) continue;
        for (double dl : c.list("delta")) {
            csv.cell(std::string("cue_correction_share")).cell(Nd).cell(dl).cell(cue_correction_share(N, dl));
            csv.end_row();
        }
    }
    csv.close();
}

json report_json(const BoundReport& b) {
    return json{{"direction", b.direction == BoundReport::Direction::Upper ? "upper" : "lower"},
                {"model", to_string(b.model)},
                {"log_T", b.log_T},
                {"param", b.param},
                {"c", b.c},
                {"C", b.C},
                {"log_bound", to_json(b.log_bound)}};
}

void cmd_bounds(Run& r) {
    const Config& c = r.cfg;
    double C = c.num("C");
    json out;
    out["leading_coefficient_minimizer"] = leading_coefficient_minimizer();
    out["sqrt2"] = std::numbers::sqrt2;
    json runs = json::array();
    for (double L : c.list("log_T")) {
        if (!(L > std::exp(1.0))) throw DomainError("bounds: log_T must exceed e");
        json e;
        e["log_T"] = L;
        e["validity_limit_k"] = ks_validity_limit(L);
        double scale = std::sqrt(L / std::log(L));
        for (BoundModel m : {BoundModel::Full, BoundModel::LeadingOrder}) {
            json mj;
            UpperOptimum u = optimize_upper_bound(L, C, m);
            mj["c_star"] = u.c_star;
            mj["log_bound"] = u.log_bound;
            mj["normalized"] = u.normalized;
            mj["upper_at_c_star"] = report_json(moment_upper_bound(L, u.c_star * scale, C, m));
            json cs = json::array();
            for (double cl : c.list("c_lower")) {
                Contradiction k = ks_contradiction(L, cl, C, m);
                cs.push_back({{"c_lower", cl}, {"lower", k.lower}, {"upper", k.upper}, {"contradicts", k.contradicts()}});
            }
            mj["contradictions"] = cs;
            e[to_string(m)] = mj;
        }
        TauOptimum t = tau_optimal(L);
        e["tau"] = {{"k_star", t.k_star}, {"tau_log", t.tau_log}, {"conjecture_log", conjecture_curve(L, 0.5)}};
        runs.push_back(e);
    }
    out["runs"] = runs;
    write_text(r.file("bounds.json"), out.dump(2) + "\n");
}

void cmd_saddle(Run& r) {
    const Config& c = r.cfg;
    CsvWriter csv(r.file("saddle.csv"), {"log_T", "alpha", "d", "x0", "x0_ratio", "f_x0", "f_ratio", "iterations"});
    double L = c.num("log_T");
    double L2 = std::log(L);
    for (double a : c.list("alpha"))
        for (double d : c.list("d")) {
            SaddleResult s = saddle_point_x0(L, a, d);
            double x_ref = d * (1.0 - 2.0 * a) * std::sqrt(L * L2);
            csv.cell(L).cell(a).cell(d).cell(s.x0).cell(s.x0 / x_ref).cell(s.f_value).cell(s.f_value / (2.0 * d * d * L))
                .cell(std::int64_t{s.iterations});
            csv.end_row();
        }
    csv.close();
}

void cmd_family(Run& r) {
    const Config& c = r.cfg;
    std::int64_t D = c.integer("D_max");
    bool dump = c.flag("dump");
    std::vector<FamilyValue> values;
    FamilyScanRecord f = family_scan(D, r.workers, c.num("tol"), dump ? &values : nullptr);
    CsvWriter csv(r.file("family.csv"), {"D_max", "count", "density", "argmax_d", "max_log_L", "normalization", "ratio"});
    csv.cell(f.D_max).cell(f.count).cell(f.density()).cell(f.argmax_d).cell(f.max_log_L).cell(f.normalization)
        .cell(f.ratio);
    csv.end_row();
    csv.close();
    if (dump) {
        CsvWriter v(r.file("family_values.csv"), {"d", "log_L"});
        for (const auto& x : values) {
            v.cell(x.d).cell(x.log_L);
            v.end_row();
        }
        v.close();
    }
}

using Handler = void (*)(Run&);
const std::map<std::string, std::pair<Handler, std::string>>& commands() {
    static const std::map<std::string, std::pair<Handler, std::string>> m = {
        {"tail", {cmd_tail, "tail probability of a characteristic-polynomial statistic"}},
        {"maxens", {cmd_maxens, "max of log|Lambda| over M independent matrices"}},
        {"primes", {cmd_primes, "random prime-phase model moments"}},
        {"zeros", {cmd_zeros, "compute zeta zeros and write a zero table"}},
        {"scan", {cmd_scan, "max of log|zeta(1/2+it)| over an interval"}},
        {"hybrid", {cmd_hybrid, "hybrid Euler-Hadamard decomposition on a t grid"}},
        {"stat", {cmd_stat, "samples of S(t)"}},
        {"moments", {cmd_moments, "moment and MGF tables"}},
        {"bounds", {cmd_bounds, "moment bounds on the maximum"}},
        {"saddle", {cmd_saddle, "saddle point of the large-value density"}},
        {"family", {cmd_family, "central values over quadratic characters"}},
    };
    return m;
}

int exit_code(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const IntegrityError*>(&e)) return 4;
    return 3;
}

void apply_manifest(const std::string& path, const std::string& sub, Config& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open manifest " + path);
    json m;
    try {
        m = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("manifest " + path + ": " + e.what());
    }
    if (m.value("subcommand", "") != sub)
        throw ConfigError("manifest " + path + " is for '" + m.value("subcommand", "") + "', not '" + sub + "'");
    if (!m.contains("config") || !m["config"].is_object()) throw ConfigError("manifest " + path + " has no config object");
    for (auto& [k, v] : m["config"].items()) {
        if (!cfg.known(k)) throw ConfigError("manifest " + path + ": unknown key '" + sub + "." + k + "'");
        cfg.set(k, v.get<std::string>(), "manifest");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Experiments on extreme values of zeta and characteristic polynomials"};
    app.require_subcommand(1);
    std::string config_path, manifest_path, out_root;
    std::vector<std::string> sets;
    unsigned workers = 0;
    // the same options are accepted before or after the subcommand name
    auto add_common = [&](CLI::App* a) {
        a->add_option("-c,--config", config_path, "key=value config file (section.key=value)");
        a->add_option("-s,--set", sets, "override one key, e.g. -s N=100 or -s tail.N=100")->allow_extra_args(false);
        a->add_option("--from-manifest", manifest_path, "reuse the config of an earlier run");
        a->add_option("-o,--out", out_root, "results root (default $RESULTS_DIR or ./results)");
        a->add_option("-w,--workers", workers, "worker threads (0 = hardware)");
    };
    add_common(&app);
    std::string chosen;
    for (const auto& [name, h] : commands()) {
        auto* sc = app.add_subcommand(name, h.second);
        add_common(sc);
        sc->callback([&chosen, n = name] { chosen = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Run run;
    run.sub = chosen;
    run.workers = workers == 0 ? default_workers() : workers;
    try {
        for (const auto& [k, v] : defaults().at(chosen)) run.cfg.declare(k, v);
        if (!manifest_path.empty()) apply_manifest(manifest_path, chosen, run.cfg);
        if (!config_path.empty()) load_config_file(config_path, chosen, key_table(), run.cfg);
        for (const auto& s : sets) {
            auto eq = s.find('=');
            if (eq == std::string::npos) throw ConfigError("--set '" + s + "': expected key=value");
            std::string key = s.substr(0, eq);
            if (key.rfind(chosen + ".", 0) == 0) key = key.substr(chosen.size() + 1);
            if (!run.cfg.known(key)) throw ConfigError("--set: unknown key '" + chosen + "." + key + "'");
            run.cfg.set(key, s.substr(eq + 1), "flag");
        }
    } catch (const Error& e) {
        std::cerr << "lfmax " << chosen << ": " << e.what() << "\n";
        return exit_code(e);
    }

    if (out_root.empty()) out_root = env_or("RESULTS_DIR", "results");
    run.dir = fs::path(out_root) / chosen;
    std::string started = iso_now();
    try {
        fs::create_directories(run.dir);
        commands().at(chosen).first(run);
    } catch (const Error& e) {
        std::cerr << "lfmax " << chosen << ": " << e.what() << "\n";
        return exit_code(e);
    } catch (const fs::filesystem_error& e) {
        std::cerr << "lfmax " << chosen << ": " << e.what() << "\n";
        return 3;
    }

    json m;
    m["subcommand"] = chosen;
    json cfg = json::object();
    for (const auto& [k, e] : run.cfg.entries()) cfg[k] = e.value;
    m["config"] = cfg;
    m["config_hash"] = hex64(fnv1a(run.cfg.canonical()));
    m["seed"] = run.cfg.known("seed") ? json(run.cfg.str("seed")) : json(nullptr);
    m["version"] = kVersion;
    m["started"] = started;
    m["finished"] = iso_now();
    m["files"] = run.files;
    try {
        write_text(run.dir / "manifest.json", m.dump(2) + "\n");
    } catch (const Error& e) {
        std::cerr << "lfmax " << chosen << ": " << e.what() << "\n";
        return 3;
    }
    std::cout << run.dir.string() << "\n";
    return 0;
}
