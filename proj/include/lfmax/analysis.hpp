#pragma once

#include <string>

namespace lfmax {

// All T-dependence enters through log T; T itself is never formed.

// sqrt(B log T log log T)
double conjecture_curve(double log_T, double B);
// sqrt(log T log log T) / (pi sqrt 2), the S(t) analogue
double conjecture_curve_s(double log_T);

// log of G^2(k+1)/G(2k+1) a(k) (log T)^{k^2}
double ks_log_moment(double log_T, double k);

// How the 2k-th moment is evaluated inside the bounds.
//   Full:         exact Barnes G and arithmetic factor
//   LeadingOrder: k^2 log log T - k^2 log k, the part that survives to leading order
enum class BoundModel { Full, LeadingOrder };
std::string to_string(BoundModel m);
BoundModel bound_model_from_string(const std::string& s);

struct BoundReport {
    enum class Direction { Upper, Lower };
    double log_T = 0.0;
    double param = 0.0;      // l for Upper, k for Lower
    double c = 0.0;          // param / sqrt(log T / log log T)
    double log_bound = 0.0;  // bound on log m_T
    Direction direction = Direction::Upper;
    double C = 1.0;
    BoundModel model = BoundModel::Full;
};

// log 2 + log(C T log T)/(2l) + (1/2l) log M_l
BoundReport moment_upper_bound(double log_T, double l, double C = 1.0, BoundModel model = BoundModel::Full);
// (1/2k) log M_k
BoundReport moment_lower_bound(double log_T, double k, BoundModel model = BoundModel::Full);

// argmin_c of 1/(2c) + c/4
double leading_coefficient_minimizer();

struct UpperOptimum {
    double c_star = 0.0;
    double log_bound = 0.0;
    double normalized = 0.0;  // log_bound / sqrt(1/2 log T log log T)
};
UpperOptimum optimize_upper_bound(double log_T, double C = 1.0, BoundModel model = BoundModel::Full);

// 2 sqrt 2 sqrt(log T / log log T)
double ks_validity_limit(double log_T);

struct Contradiction {
    double c_lower = 0.0;
    double lower = 0.0;  // lower bound at k = c_lower sqrt(log T/log log T)
    double upper = 0.0;  // upper bound at l = sqrt 2 sqrt(log T/log log T)
    bool contradicts() const { return lower > upper; }
};
Contradiction ks_contradiction(double log_T, double c_lower, double C = 1.0, BoundModel model = BoundModel::Full);

// log T/(2k) + (k/2) log log T - (k/2) log k
double tau_threshold(double log_T, double k);
struct TauOptimum {
    double k_star = 0.0;
    double tau_log = 0.0;
};
TauOptimum tau_optimal(double log_T);

// f_K(x) = (log K - x)^2/(alpha L2) + x^2/((1-alpha) L2 - log x), L2 = log log T,
// log K = d sqrt(log T L2). The log x term is frozen at log e for x <= e.
struct SaddleProblem {
    double log_T, alpha, d;
    double f(double x) const;
    double fprime(double x) const;
    double fsecond(double x) const;
    double log_K() const;
    double pole() const;  // where the second denominator vanishes
};

struct SaddleResult {
    double x0 = 0.0;
    double f_value = 0.0;
    int iterations = 0;
};
SaddleResult saddle_point_x0(double log_T, double alpha, double d);

// With k = N^delta: (log M_N(2k) - log(G^2(k+1)/G(2k+1)) - k^2 log N) / (k^2 log N),
// i.e. how much the k^3/N, k^4/N^2, ... tail moves the exponent. Small for delta < 1.
double cue_correction_share(int N, double delta);

// log of the conjectured measure fraction, -2 d^2 log T
double density_large_values(double log_T, double d);
// d at which T log T exp(-2 d^2 log T) = 1
double large_value_threshold_d(double log_T);

}  // namespace lfmax
