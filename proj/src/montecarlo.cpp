#include "lfmax/montecarlo.hpp"

#include "lfmax/errors.hpp"
#include "lfmax/mathfn.hpp"
#include "lfmax/parallel.hpp"
#include "lfmax/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lfmax {

namespace {
constexpr std::size_t kBlock = 4096;
}

std::string to_string(Statistic s) {
    switch (s) {
        case Statistic::MaxOverTheta: return "max_over_theta";
        case Statistic::AtPointZero: return "at_point_zero";
        case Statistic::ImLogAtZero: return "im_log_at_zero";
        case Statistic::CharpolyAtOne: return "charpoly_at_one";
    }
    return "?";
}

Statistic statistic_from_string(const std::string& s) {
    if (s == "max_over_theta" || s == "max") return Statistic::MaxOverTheta;
    if (s == "at_point_zero" || s == "zero") return Statistic::AtPointZero;
    if (s == "im_log_at_zero" || s == "imlog") return Statistic::ImLogAtZero;
    if (s == "charpoly_at_one" || s == "one") return Statistic::CharpolyAtOne;
    throw DomainError("unknown statistic '" + s + "'");
}

double ExperimentConfig::level() const {
    if (log_K) return *log_K;
    return std::pow(static_cast<double>(N), *lambda);
}

void ExperimentConfig::validate() const {
    if (N < 1) throw DomainError("N must be positive");
    if (kind != Kind::Unitary && N % 2 != 0) throw DomainError("symplectic/orthogonal N must be even");
    if (trials < 1) throw DomainError("trials must be >= 1");
    if (log_K.has_value() == lambda.has_value()) throw DomainError("give exactly one of log_K and lambda");
    if (lambda && !(*lambda > 0.0 && *lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
    if (statistic == Statistic::CharpolyAtOne && kind == Kind::Unitary)
        throw DomainError("charpoly_at_one needs a symplectic or orthogonal ensemble");
}

double evaluate_statistic(Kind kind, int N, Statistic stat, std::uint64_t seed) {
    auto v = sample_verblunsky(kind, N, seed);
    switch (stat) {
        case Statistic::MaxOverTheta: return max_log_abs_charpoly(v).log_value;
        case Statistic::AtPointZero: return log_abs_charpoly(v, 0.0);
        case Statistic::ImLogAtZero: return im_log_charpoly(spectrum_from_verblunsky(v), 0.0);
        case Statistic::CharpolyAtOne:
            if (kind == Kind::Unitary) throw DomainError("charpoly_at_one needs a symplectic or orthogonal ensemble");
            return log_charpoly_at_one(v);
    }
    return 0.0;
}

double predicted_log_tail(Kind kind, int N, Statistic stat, double level) {
    if (level <= 0.0) return 0.0;
    double logN = std::log(static_cast<double>(N));
    double logL = std::log(level);
    if (kind == Kind::Unitary && stat != Statistic::CharpolyAtOne) {
        double den = logN - logL;
        return den > 0 ? -level * level / den : -std::numeric_limits<double>::infinity();
    }
    if (kind != Kind::Unitary && stat == Statistic::CharpolyAtOne) {
        double den = 2.0 * logN - 2.0 * logL;
        return den > 0 ? -level * level / den : -std::numeric_limits<double>::infinity();
    }
    return std::numeric_limits<double>::quiet_NaN();
}

TailEstimate estimate_tail(const ExperimentConfig& cfg) {
    cfg.validate();
    const double level = cfg.level();
    auto blocks = map_blocks<std::int64_t>(static_cast<std::size_t>(cfg.trials), kBlock, cfg.workers, [&](std::size_t lo, std::size_t hi) {
        std::int64_t h = 0;
        for (std::size_t i = lo; i < hi; ++i)
            if (evaluate_statistic(cfg.kind, cfg.N, cfg.statistic, trial_seed(cfg.root_seed, i)) >= level) ++h;
        return h;
    });
    TailEstimate t;
    t.threshold_log_K = level;
    t.trials = cfg.trials;
    for (auto h : blocks) t.hits += h;
    t.p_hat = static_cast<double>(t.hits) / static_cast<double>(t.trials);
    t.predicted_log_p = predicted_log_tail(cfg.kind, cfg.N, cfg.statistic, level);
    if (t.hits == 0) {
        t.log_p_hat = -std::numeric_limits<double>::infinity();
        t.std_err_log = std::numeric_limits<double>::quiet_NaN();
        t.std_err_usable = false;
    } else {
        t.log_p_hat = std::log(t.p_hat);
        // delta method: sd(log p) = sqrt((1 - p) / (M p))
        t.std_err_log = std::sqrt((1.0 - t.p_hat) / (static_cast<double>(t.trials) * t.p_hat));
        t.std_err_usable = true;
    }
    return t;
}

double max_over_ensemble(Kind kind, int N, std::int64_t M, Statistic stat, std::uint64_t root_seed, unsigned workers) {
    if (M < 1) throw DomainError("max_over_ensemble: M must be >= 1");
    if (M > kDirectSimulationCap)
        throw ResourceError("max_over_ensemble: M = " + std::to_string(M) + " exceeds the direct-simulation cap; use the tail route");
    auto blocks = map_blocks<double>(static_cast<std::size_t>(M), kBlock, workers, [&](std::size_t lo, std::size_t hi) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, evaluate_statistic(kind, N, stat, trial_seed(root_seed, i)));
        return m;
    });
    return *std::max_element(blocks.begin(), blocks.end());
}

PrimePhaseSummary prime_phase_sample(std::int64_t X, std::int64_t trials, std::uint64_t root_seed, unsigned workers, bool keep_samples) {
    if (X < 2) throw DomainError("prime_phase_sample: X must be >= 2");
    if (trials < 2) throw DomainError("prime_phase_sample: need at least 2 trials");
    auto primes = primes_up_to(static_cast<std::uint32_t>(X));
    std::vector<double> w(primes.size());
    PrimePhaseSummary out;
    out.X = X;
    out.trials = trials;
    long double target = 0.0L;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        w[i] = 1.0 / std::sqrt(static_cast<double>(primes[i]));
        target += 1.0L / primes[i];
    }
    out.variance_target = static_cast<double>(0.5L * target);
    auto blocks = map_blocks<std::vector<double>>(static_cast<std::size_t>(trials), kBlock, workers, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> ys;
        ys.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) {
            Rng rng(trial_seed(root_seed, i));
            double y = 0.0;
            for (double wi : w) y += wi * std::cos(2.0 * std::numbers::pi * uniform01(rng));
            ys.push_back(y);
        }
        return ys;
    });
    std::vector<double> all;
    all.reserve(static_cast<std::size_t>(trials));
    for (auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
    const double n = static_cast<double>(all.size());
    long double s = 0.0L;
    for (double y : all) s += y;
    double mean = static_cast<double>(s / n);
    long double m2 = 0.0L, m4 = 0.0L;
    for (double y : all) {
        long double d = y - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    double c2 = static_cast<double>(m2 / n), c4 = static_cast<double>(m4 / n);
    out.mean = mean;
    out.variance = static_cast<double>(m2 / (n - 1.0));
    out.variance_std_err = std::sqrt(std::max(0.0, c4 - c2 * c2) / n);
    out.excess_kurtosis = c4 / (c2 * c2) - 3.0;
    if (keep_samples) out.samples = std::move(all);
    return out;
}

double predicted_log_max(int N, double log_M) {
    if (N < 2) throw DomainError("predicted_log_max: need N >= 2");
    if (!(log_M > 1.0)) throw DomainError("predicted_log_max: need log M > 1");
    const double logN = std::log(static_cast<double>(N));
    const double beta = std::log(log_M) / logN;
    if (!(beta > 0.0 && beta < 2.0)) throw DomainError("predicted_log_max: need 0 < beta < 2");
    return std::sqrt(1.0 - 0.5 * beta) * std::sqrt(log_M * logN);
}

double gaussian_sampling_max(double V, double L) {
    if (!(V >= 0.0) || !(L >= 0.0)) throw DomainError("gaussian_sampling_max: V and L must be non-negative");
    return std::sqrt(2.0 * V * L);
}

}  // namespace lfmax
