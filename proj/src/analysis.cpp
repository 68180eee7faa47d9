#include "lfmax/analysis.hpp"

#include "lfmax/errors.hpp"
#include "lfmax/mathfn.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lfmax {

namespace {

double loglog(double log_T, const char* who) {
    if (!std::isfinite(log_T) || log_T <= 1.0) throw DomainError(std::string(who) + ": need log T > 1");
    return std::log(log_T);
}

double scale(double log_T) { return std::sqrt(log_T / std::log(log_T)); }

double log_moment(double log_T, double k, BoundModel model) {
    if (model == BoundModel::Full) return ks_log_moment(log_T, k);
    return k * k * std::log(log_T) - k * k * std::log(k);
}

struct RootTol {
    double eps;
    bool operator()(double a, double b) const { return std::abs(b - a) <= eps * std::max(1.0, std::abs(a)); }
};

// golden-section/Brent, then a root of the central-difference derivative
template <class F>
double minimize_polished(F f, double lo, double hi, double h) {
    auto m = boost::math::tools::brent_find_minima(f, lo, hi, 52);
    double c = m.first;
    auto g = [&](double x) { return (f(x + h) - f(x - h)) / (2.0 * h); };
    double a = std::max(lo + h, c - 1e-3), b = std::min(hi - h, c + 1e-3);
    double ga = g(a), gb = g(b);
    if (ga * gb >= 0.0) return c;
    std::uintmax_t it = 200;
    auto r = boost::math::tools::toms748_solve(g, a, b, ga, gb, RootTol{1e-15}, it);
    return 0.5 * (r.first + r.second);
}

}  // namespace

double conjecture_curve(double log_T, double B) {
    double L2 = loglog(log_T, "conjecture_curve");
    if (!(B > 0.0)) throw DomainError("conjecture_curve: need B > 0");
    return std::sqrt(B * log_T * L2);
}

double conjecture_curve_s(double log_T) {
    double L2 = loglog(log_T, "conjecture_curve_s");
    return std::sqrt(log_T * L2) / (kPi * std::sqrt(2.0));
}

double ks_log_moment(double log_T, double k) {
    double L2 = loglog(log_T, "ks_log_moment");
    if (!std::isfinite(k) || k < 0.0) throw DomainError("ks_log_moment: need k >= 0");
    if (k == 0.0) return 0.0;
    return 2.0 * log_barnes_g(k + 1.0) - log_barnes_g(2.0 * k + 1.0) + arithmetic_factor_a(k) + k * k * L2;
}

std::string to_string(BoundModel m) { return m == BoundModel::Full ? "full" : "leading"; }

BoundModel bound_model_from_string(const std::string& s) {
    if (s == "full") return BoundModel::Full;
    if (s == "leading") return BoundModel::LeadingOrder;
    throw ConfigError("unknown bound model '" + s + "' (expected full or leading)");
}

BoundReport moment_upper_bound(double log_T, double l, double C, BoundModel model) {
    double L2 = loglog(log_T, "moment_upper_bound");
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("moment_upper_bound: need l > 0");
    if (!(C > 0.0)) throw DomainError("moment_upper_bound: need C > 0");
    BoundReport r;
    r.log_T = log_T;
    r.param = l;
    r.c = l / scale(log_T);
    r.direction = BoundReport::Direction::Upper;
    r.C = C;
    r.model = model;
    r.log_bound = std::log(2.0) + (std::log(C) + log_T + L2) / (2.0 * l) + log_moment(log_T, l, model) / (2.0 * l);
    return r;
}

BoundReport moment_lower_bound(double log_T, double k, BoundModel model) {
    loglog(log_T, "moment_lower_bound");
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("moment_lower_bound: need k > 0");
    BoundReport r;
    r.log_T = log_T;
    r.param = k;
    r.c = k / scale(log_T);
    r.direction = BoundReport::Direction::Lower;
    r.model = model;
    r.log_bound = log_moment(log_T, k, model) / (2.0 * k);
    return r;
}

double leading_coefficient_minimizer() {
    return minimize_polished([](double c) { return 1.0 / (2.0 * c) + c / 4.0; }, 0.1, 10.0, 1e-5);
}

UpperOptimum optimize_upper_bound(double log_T, double C, BoundModel model) {
    double L2 = loglog(log_T, "optimize_upper_bound");
    if (L2 <= 1.0) throw DomainError("optimize_upper_bound: need log log T > 1");
    const double s = scale(log_T);
    auto f = [&](double c) { return moment_upper_bound(log_T, c * s, C, model).log_bound; };
    auto m = boost::math::tools::brent_find_minima(f, 0.2, 6.0, 40);
    UpperOptimum out;
    out.c_star = m.first;
    out.log_bound = m.second;
    out.normalized = m.second / conjecture_curve(log_T, 0.5);
    return out;
}

double ks_validity_limit(double log_T) {
    loglog(log_T, "ks_validity_limit");
    return 2.0 * std::sqrt(2.0) * scale(log_T);
}

Contradiction ks_contradiction(double log_T, double c_lower, double C, BoundModel model) {
    loglog(log_T, "ks_contradiction");
    if (!(c_lower > 0.0)) throw DomainError("ks_contradiction: need c > 0");
    const double s = scale(log_T);
    Contradiction out;
    out.c_lower = c_lower;
    out.lower = moment_lower_bound(log_T, c_lower * s, model).log_bound;
    out.upper = moment_upper_bound(log_T, std::sqrt(2.0) * s, C, model).log_bound;
    return out;
}

double tau_threshold(double log_T, double k) {
    double L2 = loglog(log_T, "tau_threshold");
    if (!(k > 0.0)) throw DomainError("tau_threshold: need k > 0");
    return log_T / (2.0 * k) + 0.5 * k * L2 - 0.5 * k * std::log(k);
}

TauOptimum tau_optimal(double log_T) {
    double L2 = loglog(log_T, "tau_optimal");
    // d/dk: -log T/(2k^2) + (L2 - log k - 1)/2
    auto g = [&](double k) { return -log_T / (2.0 * k * k) + 0.5 * (L2 - std::log(k) - 1.0); };
    // g rises from -inf and turns negative again once log k > L2 - 1
    const double hi = std::exp(L2 - 1.0);
    double a = 1e-6, b = std::min(hi, std::sqrt(2.0 * log_T / L2));
    while (g(b) < 0.0 && b < hi) b = std::min(hi, b * 1.5);
    if (!(g(a) < 0.0 && g(b) > 0.0)) throw NumericError("tau_optimal: no stationary point for this log T");
    std::uintmax_t it = 200;
    auto r = boost::math::tools::toms748_solve(g, a, b, RootTol{1e-15}, it);
    TauOptimum out;
    out.k_star = 0.5 * (r.first + r.second);
    out.tau_log = tau_threshold(log_T, out.k_star);
    return out;
}

double SaddleProblem::log_K() const { return d * std::sqrt(log_T * std::log(log_T)); }

double SaddleProblem::pole() const { return std::exp((1.0 - alpha) * std::log(log_T)); }

double SaddleProblem::f(double x) const {
    const double L2 = std::log(log_T);
    const double g = (1.0 - alpha) * L2 - (x <= std::exp(1.0) ? 1.0 : std::log(x));
    const double u = log_K() - x;
    return u * u / (alpha * L2) + x * x / g;
}

double SaddleProblem::fprime(double x) const {
    const double L2 = std::log(log_T);
    const double first = 2.0 * (x - log_K()) / (alpha * L2);
    if (x <= std::exp(1.0)) return first + 2.0 * x / ((1.0 - alpha) * L2 - 1.0);
    const double g = (1.0 - alpha) * L2 - std::log(x);
    return first + 2.0 * x / g + x / (g * g);
}

double SaddleProblem::fsecond(double x) const {
    const double L2 = std::log(log_T);
    const double first = 2.0 / (alpha * L2);
    if (x <= std::exp(1.0)) return first + 2.0 / ((1.0 - alpha) * L2 - 1.0);
    const double g = (1.0 - alpha) * L2 - std::log(x);
    return first + 2.0 / g + 3.0 / (g * g) + 2.0 / (g * g * g);
}

SaddleResult saddle_point_x0(double log_T, double alpha, double d) {
    double L2 = loglog(log_T, "saddle_point_x0");
    if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("saddle_point_x0: need 0 < alpha < 1/2");
    if (!(d > 0.0)) throw DomainError("saddle_point_x0: need d > 0");
    if ((1.0 - alpha) * L2 <= 1.0) throw DomainError("saddle_point_x0: log log T too small for this alpha");
    SaddleProblem P{log_T, alpha, d};
    // f' < 0 at 0 and f' > 0 just below the pole or at log K, whichever comes first
    double lo = 0.0, hi = std::min(P.log_K(), P.pole() * (1.0 - 1e-9));
    if (P.fprime(hi) <= 0.0) throw NumericError("saddle_point_x0: no sign change of f_K' on the bracket");
    double x = std::clamp(d * (1.0 - 2.0 * alpha) * std::sqrt(log_T * L2), lo, hi);
    double fp = 0.0;
    for (int it = 1; it <= 100; ++it) {
        fp = P.fprime(x);
        if (fp < 0.0)
            lo = x;
        else
            hi = x;
        double step = fp / P.fsecond(x);
        double nx = x - step;
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);  // fall back to bisection
        if (std::abs(nx - x) <= 1e-13 * std::max(1.0, std::abs(x)) || hi - lo <= 1e-13 * std::max(1.0, hi)) {
            SaddleResult r;
            r.x0 = nx;
            r.f_value = P.f(nx);
            r.iterations = it;
            return r;
        }
        x = nx;
    }
    std::ostringstream os;
    os << "saddle_point_x0: no convergence after 100 iterations, |f'| = " << std::abs(fp) << " at x = " << x;
    throw NumericError(os.str());
}

double density_large_values(double log_T, double d) {
    loglog(log_T, "density_large_values");
    if (!(d >= 0.0)) throw DomainError("density_large_values: need d >= 0");
    return -2.0 * d * d * log_T;
}

double cue_correction_share(int N, double delta) {
    if (N < 2) throw DomainError("cue_correction_share: need N >= 2");
    if (!std::isfinite(delta) || delta < 0.0) throw DomainError("cue_correction_share: need delta >= 0");
    const double n = N, k = std::pow(n, delta);
    double lead = k * k * std::log(n);
    double g = log_barnes_g(n + 1.0) + log_barnes_g(n + 2.0 * k + 1.0) - 2.0 * log_barnes_g(n + k + 1.0);
    return (g - lead) / lead;
}

double large_value_threshold_d(double log_T) {
    double L2 = loglog(log_T, "large_value_threshold_d");
    // log T + log log T - 2 d^2 log T = 0
    auto g = [&](double d) { return log_T + L2 + density_large_values(log_T, d); };
    std::uintmax_t it = 200;
    auto r = boost::math::tools::toms748_solve(g, 0.0, 10.0, RootTol{1e-15}, it);
    return 0.5 * (r.first + r.second);
}

}  // namespace lfmax
