#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace lfmax {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
// zeta'(-1) = 1/12 - log A (A = Glaisher's constant)
inline constexpr double kZetaPrimeMinus1 = -0.16542114370045092921391966024278064;
// Prime zeta function P(2) = sum_p p^-2
inline constexpr double kPrimeZeta2 = 0.45224742004106549850654336483224793;
inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kLog2Pi = 1.83787706640934548356065947281123527;

// log Gamma(x), x > 0. Thread safe (does not touch signgam).
double log_gamma(double x);

// Principal-branch continuous log Gamma(z) for Re z > 0.
std::complex<double> log_gamma(std::complex<double> z);

// log G(x) for the Barnes G-function, x >= 1.
double log_barnes_g(double x);

// Exponential integral E1(z) for Re z >= 0, z != 0.
std::complex<double> exp_integral_e1(std::complex<double> z);
double exp_integral_e1(double x);

struct ArithmeticFactor {
    double log_a = 0.0;
    double prime_cutoff = 0.0;   // primes <= cutoff are summed exactly
    double smooth_upto = 0.0;    // (cutoff, smooth_upto] uses the prime density
    double tail = 0.0;           // everything beyond the exact prime sum
    double error_bound = 0.0;    // conditional on RH for the prime-counting error
};

// log a(k), the Euler product in the moment conjecture.
ArithmeticFactor arithmetic_factor_a_detail(double k, double rel_tol = 1e-12);
double arithmetic_factor_a(double k, double rel_tol = 1e-12);

// Per-prime factor log[(1-1/p)^{k^2} 2F1(k,k;1;1/p)].
double arithmetic_local_factor(double k, double p);

struct VonMangoldtTable {
    std::int64_t limit = 0;
    std::vector<double> values;         // values[n] = Lambda(n), n <= limit
    std::vector<std::uint32_t> primes;  // ascending

    double operator()(std::int64_t n) const { return values.at(static_cast<std::size_t>(n)); }
};

VonMangoldtTable sieve_von_mangoldt(std::int64_t X);

// All primes <= n (plain Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

double riemann_siegel_theta(double t);

// Bernoulli number B_{2k}, 1 <= k <= 10.
double bernoulli_even(int k);

}  // namespace lfmax
