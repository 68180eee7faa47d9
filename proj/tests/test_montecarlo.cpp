#include "lfmax/errors.hpp"
#include "lfmax/mathfn.hpp"
#include "lfmax/montecarlo.hpp"

#include <doctest.h>

#include <cmath>

using namespace lfmax;

TEST_CASE("tail estimate is worker-count independent") {
    ExperimentConfig c;
    c.N = 20;
    c.lambda = 0.3;
    c.trials = 20000;
    c.root_seed = 7;
    c.workers = 1;
    TailEstimate a = estimate_tail(c);
    c.workers = 8;
    TailEstimate b = estimate_tail(c);
    CHECK(a.hits == b.hits);
    CHECK(a.log_p_hat == b.log_p_hat);
    CHECK(a.hits >= 0);
    CHECK(a.hits <= a.trials);
    CHECK(a.p_hat == double(a.hits) / double(a.trials));
}

TEST_CASE("tail edge cases") {
    ExperimentConfig c;
    c.N = 10;
    c.log_K = 50.0;  // log|Lambda| <= N log 2, never reached
    c.trials = 100;
    TailEstimate t = estimate_tail(c);
    CHECK(t.hits == 0);
    CHECK(std::isinf(t.log_p_hat));
    CHECK_FALSE(t.std_err_usable);

    c.lambda = 0.3;
    CHECK_THROWS_AS(estimate_tail(c), DomainError);  // both given
    ExperimentConfig d;
    d.statistic = Statistic::CharpolyAtOne;
    d.lambda = 0.3;
    CHECK_THROWS_AS(d.validate(), DomainError);
}

TEST_CASE("predicted rate: symplectic has twice the denominator") {
    double lk = 4.0;
    double u = predicted_log_tail(Kind::Unitary, 100, Statistic::AtPointZero, lk);
    double s = predicted_log_tail(Kind::Symplectic, 100, Statistic::CharpolyAtOne, lk);
    CHECK(u == doctest::Approx(2.0 * s));
    CHECK(u == doctest::Approx(-lk * lk / (std::log(100.0) - std::log(lk))));
}

TEST_CASE("prime phase moments match the exact cumulants") {
    const std::int64_t X = 1000;
    PrimePhaseSummary s = prime_phase_sample(X, 60000, 17, 0, true);
    // Y = sum p^{-1/2} cos(theta_p): var = (1/2) sum 1/p, fourth cumulant = -(3/8) sum 1/p^2
    double s1 = 0.0, s2 = 0.0;
    for (auto p : primes_up_to(1000)) s1 += 1.0 / p, s2 += 1.0 / (double(p) * p);
    double var = 0.5 * s1, kurt = -0.375 * s2 / (var * var);
    CHECK(s.variance_target == doctest::Approx(var));
    CHECK(std::abs(s.variance - var) < 3.0 * s.variance_std_err);
    CHECK(std::abs(s.mean) < 3.0 * std::sqrt(var / 60000.0));
    // sd of the kurtosis estimator is about sqrt(24/n)
    CHECK(std::abs(s.excess_kurtosis - kurt) < 3.0 * std::sqrt(24.0 / 60000.0));
    CHECK(s.samples.size() == 60000);
}

TEST_CASE("max over ensemble is deterministic and monotone in M") {
    double a = max_over_ensemble(Kind::Unitary, 20, 50, Statistic::MaxOverTheta, 3, 1);
    double b = max_over_ensemble(Kind::Unitary, 20, 50, Statistic::MaxOverTheta, 3, 8);
    CHECK(a == b);
    // trials 0..49 are a subset of trials 0..199
    CHECK(max_over_ensemble(Kind::Unitary, 20, 200, Statistic::MaxOverTheta, 3) >= a);
}

TEST_CASE("predicted max and Gaussian extreme") {
    // beta = log log M / log N
    double logM = std::log(22026.0), N = 100;
    double beta = std::log(logM) / std::log(N);
    CHECK(predicted_log_max(100, logM) == doctest::Approx(std::sqrt(1 - beta / 2) * std::sqrt(logM * std::log(N))));
    CHECK(gaussian_sampling_max(2.0, 8.0) == doctest::Approx(std::sqrt(32.0)));
}
