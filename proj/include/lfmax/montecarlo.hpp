#pragma once

#include "lfmax/ensembles.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lfmax {

enum class Statistic { MaxOverTheta, AtPointZero, ImLogAtZero, CharpolyAtOne };

std::string to_string(Statistic s);
Statistic statistic_from_string(const std::string& s);

// The statistic is compared against `level`: log K for the |Lambda| and Z(U,0)
// statistics, K itself for Im log Lambda(0). A lambda spec means level = N^lambda.
struct ExperimentConfig {
    Kind kind = Kind::Unitary;
    int N = 1;
    std::optional<double> log_K;
    std::optional<double> lambda;
    std::int64_t trials = 1;
    std::uint64_t root_seed = 0;
    Statistic statistic = Statistic::AtPointZero;
    unsigned workers = 0;  // 0: hardware parallelism

    double level() const;
    void validate() const;
};

struct TailEstimate {
    double threshold_log_K = 0.0;
    std::int64_t trials = 0;
    std::int64_t hits = 0;
    double p_hat = 0.0;
    double log_p_hat = 0.0;
    double std_err_log = 0.0;
    bool std_err_usable = false;  // false when hits == 0
    double predicted_log_p = 0.0;
};

double evaluate_statistic(Kind kind, int N, Statistic stat, std::uint64_t seed);

// Minus the large-deviation rate at `level` for the given ensemble/statistic.
double predicted_log_tail(Kind kind, int N, Statistic stat, double level);

TailEstimate estimate_tail(const ExperimentConfig& cfg);

inline constexpr std::int64_t kDirectSimulationCap = 10'000'000;

// log of the max over M independent spectra; trial i uses trial_seed(root, i).
double max_over_ensemble(Kind kind, int N, std::int64_t M, Statistic stat, std::uint64_t root_seed, unsigned workers = 0);

struct PrimePhaseSummary {
    std::int64_t X = 0;
    std::int64_t trials = 0;
    double mean = 0.0;
    double variance = 0.0;
    double variance_std_err = 0.0;
    double excess_kurtosis = 0.0;
    double variance_target = 0.0;  // (1/2) sum_{p <= X} 1/p
    std::vector<double> samples;   // filled only on request
};

PrimePhaseSummary prime_phase_sample(std::int64_t X, std::int64_t trials, std::uint64_t root_seed, unsigned workers = 0,
                                     bool keep_samples = false);

// sqrt(1 - beta/2) sqrt(log M log N) with M = exp(N^beta): the K at which the
// max over M unitary matrices settles.
double predicted_log_max(int N, double log_M);

// Extreme-value location sqrt(2 V L) of exp(L) Gaussian samples with variance V.
double gaussian_sampling_max(double V, double L);

}  // namespace lfmax
