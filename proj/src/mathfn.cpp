#include "lfmax/mathfn.hpp"

#include "lfmax/errors.hpp"
#include "lfmax/detail/gauss_legendre.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace lfmax {

namespace {

constexpr std::array<double, 11> kBernoulliEven = {
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
};

template <class T>
T log_gamma_impl(T z) {
    // shift up so Stirling with eight Bernoulli terms is good to ~1e-17
    T shift = 0;
    while (std::real(z) < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    T zinv = 1.0 / z;
    T zinv2 = zinv * zinv;
    T series = 0;
    T pw = zinv;
    for (int k = 1; k <= 8; ++k) {
        series += kBernoulliEven[k] / (2.0 * k * (2.0 * k - 1.0)) * pw;
        pw *= zinv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * kLog2Pi + series - shift;
}

bool is_integer(double x) { return std::floor(x) == x; }

// log G(1+w) for w >= 20
double log_barnes_g_asymptotic(double w) {
    double lw = std::log(w);
    double w2 = w * w;
    double s = 0.5 * w2 * lw - 0.75 * w2 + 0.5 * w * kLog2Pi - lw / 12.0 + kZetaPrimeMinus1;
    double winv2 = 1.0 / w2;
    double pw = winv2;
    for (int k = 1; k <= 8; ++k) {
        s += kBernoulliEven[k + 1] / (4.0 * k * (k + 1.0)) * pw;
        pw *= winv2;
    }
    return s;
}

constexpr std::uint32_t kPrimeCacheLimit = 10'000'000;

const std::vector<std::uint32_t>& cached_primes() {
    static const std::vector<std::uint32_t> primes = primes_up_to(kPrimeCacheLimit);
    return primes;
}

// Taylor coefficients e_j (j = 0..J) of log[(1-x)^{k^2} 2F1(k,k;1;x)] at x = 0.
std::vector<long double> local_factor_series(double k, int J) {
    std::vector<long double> a(J + 1), l(J + 1, 0.0L), e(J + 1, 0.0L);
    a[0] = 1.0L;
    for (int m = 1; m <= J; ++m) {
        long double r = (m - 1 + static_cast<long double>(k)) / m;
        a[m] = a[m - 1] * r * r;
    }
    long double k2 = static_cast<long double>(k) * k;
    for (int m = 1; m <= J; ++m) {
        long double acc = 0.0L;
        for (int j = 1; j < m; ++j) acc += j * l[j] * a[m - j];
        l[m] = a[m] - acc / m;
        e[m] = l[m] - k2 / m;
    }
    return e;
}

// Schoenfeld: |pi(x) - li(x)| < sqrt(x) log x / (8 pi) for x >= 2657, assuming RH.
double pi_li_error(double x) { return std::sqrt(x) * std::log(x) / (8.0 * kPi); }

// sum_j e_j sum_{p > P} p^{-j} with the prime sums replaced by li-integrals.
// Returns {value, error}.
std::pair<double, double> series_tail(const std::vector<long double>& e, double P, double scale) {
    double logP = std::log(P);
    double val = 0.0, err = 0.0;
    int J = static_cast<int>(e.size()) - 1;
    for (int j = 2; j <= J; ++j) {
        double ej = static_cast<double>(e[j]);
        double Ij = exp_integral_e1((j - 1) * logP);
        double term = ej * Ij;
        val += term;
        err += std::abs(ej) * 3.0 * pi_li_error(P) * std::pow(P, -j);
        if (j > 3 && std::abs(term) < 1e-22 * scale) break;
    }
    // first omitted term, bounded crudely by the last included one
    return {val, err};
}

}  // namespace

double bernoulli_even(int k) {
    if (k < 1 || k > 10) throw DomainError("bernoulli_even: k out of range");
    return kBernoulliEven[static_cast<std::size_t>(k)];
}

double log_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0) throw DomainError("log_gamma: argument must be finite and positive, got " + std::to_string(x));
    if (x == 1.0 || x == 2.0) return 0.0;
    return log_gamma_impl(x);
}

std::complex<double> log_gamma(std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || z.real() <= 0.0)
        throw DomainError("log_gamma: complex argument needs Re z > 0");
    return log_gamma_impl(z);
}

double log_barnes_g(double x) {
    if (!std::isfinite(x) || x < 1.0) throw DomainError("log_barnes_g: argument must be >= 1, got " + std::to_string(x));
    if (is_integer(x) && x <= 1e5) {
        // log G(n) = sum_{j=1}^{n-1} (n-1-j) log j
        auto n = static_cast<std::int64_t>(x);
        long double s = 0.0L;
        for (std::int64_t j = 2; j <= n - 2; ++j) s += static_cast<long double>(n - 1 - j) * std::log(static_cast<long double>(j));
        return static_cast<double>(s);
    }
    double acc = 0.0;
    double z = x;
    while (z < 21.0) {
        acc -= log_gamma(z);
        z += 1.0;
    }
    return log_barnes_g_asymptotic(z - 1.0) + acc;
}

std::complex<double> exp_integral_e1(std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("exp_integral_e1: non-finite argument");
    if (z.real() < 0.0 || z == std::complex<double>(0.0, 0.0))
        throw DomainError("exp_integral_e1: need Re z >= 0 and z != 0");
    constexpr double eps = 1e-16;
    if (std::abs(z) <= 4.0) {
        std::complex<double> sum = 0.0, term = 1.0;
        for (int n = 1; n < 200; ++n) {
            term *= -z / static_cast<double>(n);
            std::complex<double> add = term / static_cast<double>(n);
            sum += add;
            if (std::abs(add) < eps * std::abs(sum)) break;
        }
        return -kEulerGamma - std::log(z) - sum;
    }
    // modified Lentz on the even contraction of the continued fraction
    const double tiny = 1e-300;
    std::complex<double> b = z + 1.0;
    std::complex<double> c = 1.0 / tiny;
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        std::complex<double> del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < eps) return h * std::exp(-z);
    }
    throw NumericError("exp_integral_e1: continued fraction did not converge");
}

double exp_integral_e1(double x) {
    if (!std::isfinite(x) || x <= 0.0) throw DomainError("exp_integral_e1: need x > 0");
    if (x > 700.0) return 0.0;
    return exp_integral_e1(std::complex<double>(x, 0.0)).real();
}

double arithmetic_local_factor(double k, double p) {
    if (k == 0.0) return 0.0;
    double x = 1.0 / p;
    double s = 1.0, t = 1.0, logscale = 0.0;
    for (int m = 1; m < 10'000'000; ++m) {
        double r = (m - 1 + k) / m;
        r = r * r * x;
        t *= r;
        s += t;
        if (s > 1e200) {
            s *= 1e-200;
            t *= 1e-200;
            logscale += 200.0 * std::log(10.0);
        }
        double rn = (m + k) / (m + 1.0);
        rn = std::max(rn * rn * x, x);
        if (rn < 1.0 && t * rn / (1.0 - rn) < 1e-18 * s) break;
    }
    return k * k * std::log1p(-x) + std::log(s) + logscale;
}

ArithmeticFactor arithmetic_factor_a_detail(double k, double rel_tol) {
    if (!std::isfinite(k) || k < 0.0) throw DomainError("arithmetic_factor_a: k must be >= 0");
    if (!(rel_tol > 0.0)) throw DomainError("arithmetic_factor_a: rel_tol must be > 0");
    ArithmeticFactor out;
    // k = 1: the inner sum is (1-1/p)^{-1} and every local factor is 1
    if (k == 0.0 || k == 1.0) return out;

    const auto& primes = cached_primes();
    const double cap = static_cast<double>(kPrimeCacheLimit);
    const double k2 = k * k;
    // e_j grows like (k^2/1.45)^j; at p >= 100 k^2 the series ratio is < 1/140
    const double series_start = 100.0 * k2;
    auto e = local_factor_series(k, 24);

    if (series_start <= cap) {
        double P = std::max(1e5, series_start);
        while (true) {
            long double sum = 0.0L, inv2 = 0.0L;
            for (auto p : primes) {
                if (p > P) break;
                sum += arithmetic_local_factor(k, p);
                inv2 += 1.0L / (static_cast<long double>(p) * p);
            }
            double scale = std::max(1.0, std::abs(static_cast<double>(sum)));
            // j = 2 is exact through P(2); j >= 3 uses li-integrals
            double s2 = static_cast<double>(static_cast<long double>(kPrimeZeta2) - inv2);
            std::vector<long double> e3(e);
            e3[2] = 0.0L;
            auto [t3, err3] = series_tail(e3, P, scale);
            double tail = static_cast<double>(e[2]) * s2 + t3;
            out.log_a = static_cast<double>(sum) + tail;
            out.prime_cutoff = P;
            out.smooth_upto = P;
            out.tail = tail;
            out.error_bound = err3 + std::abs(static_cast<double>(e[2])) * 1e-17;
            if (out.error_bound <= rel_tol * std::max(1.0, std::abs(out.log_a)) || P >= cap) break;
            P = std::min(cap, 4.0 * P);
        }
        return out;
    }

    // Large k: exact up to the cached table, then the prime density.
    long double sum = 0.0L;
    for (auto p : primes) sum += arithmetic_local_factor(k, p);
    const double P = cap;
    const double Xc = series_start;
    const double u0 = std::log(P), u1 = std::log(Xc);
    const auto& gl = detail::gauss_legendre(20);
    auto g = [&](double u) {
        double x = std::exp(u);
        return arithmetic_local_factor(k, x) * x / u;
    };
    auto gerr = [&](double u) {
        const double h = 1e-4;
        double df = (arithmetic_local_factor(k, std::exp(u + h)) - arithmetic_local_factor(k, std::exp(u - h))) / (2 * h);
        return std::abs(df) * pi_li_error(std::exp(u));
    };
    int panels = std::max(1, static_cast<int>(std::ceil((u1 - u0) / 0.25)));
    double w = (u1 - u0) / panels;
    double smooth = 0.0, serr = 0.0;
    for (int i = 0; i < panels; ++i) {
        double a = u0 + i * w, b = a + w;
        smooth += detail::gl_integrate(gl, g, a, b);
        serr += detail::gl_integrate(gl, gerr, a, b);
    }
    serr += std::abs(arithmetic_local_factor(k, P)) * pi_li_error(P) + std::abs(arithmetic_local_factor(k, Xc)) * pi_li_error(Xc);
    double scale = std::max(1.0, std::abs(static_cast<double>(sum)));
    auto [tb, errb] = series_tail(e, Xc, scale);
    out.log_a = static_cast<double>(sum) + smooth + tb;
    out.prime_cutoff = P;
    out.smooth_upto = Xc;
    out.tail = smooth + tb;
    out.error_bound = serr + errb;
    return out;
}

double arithmetic_factor_a(double k, double rel_tol) { return arithmetic_factor_a_detail(k, rel_tol).log_a; }

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    if (n < 2) return out;
    // odd-only sieve: index i <-> 2i+1
    std::vector<std::uint8_t> composite(n / 2 + 1, 0);
    out.push_back(2);
    for (std::uint64_t i = 1; 2 * i + 1 <= n; ++i) {
        if (composite[i]) continue;
        std::uint64_t p = 2 * i + 1;
        out.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t q = p * p; q <= n; q += 2 * p) composite[q / 2] = 1;
    }
    return out;
}

VonMangoldtTable sieve_von_mangoldt(std::int64_t X) {
    if (X < 1) throw DomainError("sieve_von_mangoldt: X must be >= 1");
    if (X > 200'000'000) throw ResourceError("sieve_von_mangoldt: table of size " + std::to_string(X) + " exceeds the 2e8 cap");
    VonMangoldtTable t;
    t.limit = X;
    t.values.assign(static_cast<std::size_t>(X) + 1, 0.0);
    t.primes = primes_up_to(static_cast<std::uint32_t>(X));
    for (auto p : t.primes) {
        double lp = std::log(static_cast<double>(p));
        for (std::int64_t q = p; q <= X; q *= p) {
            t.values[static_cast<std::size_t>(q)] = lp;
            if (q > X / p) break;
        }
    }
    return t;
}

double riemann_siegel_theta(double t) {
    if (!std::isfinite(t)) throw DomainError("riemann_siegel_theta: non-finite t");
    if (t < 0.0) return -riemann_siegel_theta(-t);
    if (t == 0.0) return 0.0;
    if (t < 10.0) return log_gamma(std::complex<double>(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
    double s = 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0;
    double tinv = 1.0 / t, tinv2 = tinv * tinv, pw = tinv;
    for (int k = 1; k <= 7; ++k) {
        double c = (1.0 - std::ldexp(1.0, 1 - 2 * k)) * std::abs(kBernoulliEven[k]) / (4.0 * k * (2.0 * k - 1.0));
        s += c * pw;
        pw *= tinv2;
    }
    return s;
}

}  // namespace lfmax
