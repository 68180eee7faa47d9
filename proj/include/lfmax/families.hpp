#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace lfmax {

// Kronecker symbol (d|n) for n >= 1.
int kronecker_symbol(std::int64_t d, std::int64_t n);

bool is_fundamental_discriminant(std::int64_t d);

// L(1/2, chi_d) from the smoothed approximate functional equation.
double l_central_quadratic(std::int64_t d, double tol = 1e-8);

// Same sum but with the root number taken from a numerically evaluated Gauss
// sum instead of being set to 1. The imaginary part measures how far that is
// from the real value.
std::complex<double> l_central_quadratic_raw(std::int64_t d, double tol = 1e-8);

// q^{-1/2} sum_{a<q} chi_d(a) zeta(1/2, a/q), Hurwitz zeta by Euler-Maclaurin.
// Independent of the functional equation; O(|d|) per call.
double l_central_quadratic_hurwitz(std::int64_t d);

struct FamilyScanRecord {
    std::int64_t D_max = 0;
    std::int64_t count = 0;     // fundamental d with 1 < |d| <= D_max
    std::int64_t argmax_d = 0;
    double max_log_L = 0.0;
    double normalization = 0.0; // sqrt(log D log log D)
    double ratio = 0.0;

    double density() const { return static_cast<double>(count) / static_cast<double>(D_max); }
};

struct FamilyValue {
    std::int64_t d;
    double log_L;  // -inf when L(1/2) <= 0
};

inline constexpr std::int64_t kFamilyScanCap = 1'000'000;

// Fundamental discriminants d with 1 < |d| <= D_max, ordered by |d| then sign
// (negative first).
std::vector<std::int64_t> fundamental_discriminants(std::int64_t D_max);

FamilyScanRecord family_scan(std::int64_t D_max, unsigned workers = 0, double tol = 1e-8,
                             std::vector<FamilyValue>* values = nullptr);

}  // namespace lfmax
