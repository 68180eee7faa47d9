#include "lfmax/families.hpp"

#include "lfmax/errors.hpp"
#include "lfmax/mathfn.hpp"
#include "lfmax/parallel.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lfmax {

namespace {

int jacobi(std::int64_t a, std::int64_t n) {
    // n odd positive, 0 <= a < n
    int r = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            std::int64_t m = n & 7;
            if (m == 3 || m == 5) r = -r;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) r = -r;
        a %= n;
    }
    return n == 1 ? r : 0;
}

bool squarefree(std::int64_t m) {
    m = m < 0 ? -m : m;
    if (m == 0) return false;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return false;
        }
    }
    return true;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

void check_discriminant(std::int64_t d, const char* who) {
    if (d == 1 || !is_fundamental_discriminant(d))
        throw DomainError(std::string(who) + ": " + std::to_string(d) + " is not a nontrivial fundamental discriminant");
}

// sum_{n <= M} chi(n) n^{-1/2} Q(a', pi n^2 / q)
double smoothed_sum(std::int64_t d, double tol) {
    check_discriminant(d, "l_central_quadratic");
    if (std::llabs(d) > 100'000'000) throw DomainError("l_central_quadratic: |d| above 1e8");
    if (!(tol >= 1e-8)) throw DomainError("l_central_quadratic: tol must be >= 1e-8");
    const double q = static_cast<double>(std::llabs(d));
    const double a = d < 0 ? 0.75 : 0.25;  // (1/2 + a)/2 with a = 0 or 1
    // Q(a, x) < e^{-x}; the tail beyond x_cut is below tol
    const double x_cut = std::log(1.0 / tol) + 0.5 * std::log(q) + 2.0;
    const auto M = static_cast<std::int64_t>(std::ceil(std::sqrt(q * x_cut / kPi)));
    double s = 0.0;
    for (std::int64_t n = 1; n <= M; ++n) {
        int c = kronecker_symbol(d, n);
        if (c == 0) continue;
        double nn = static_cast<double>(n);
        s += c * boost::math::gamma_q(a, kPi * nn * nn / q) / std::sqrt(nn);
    }
    return s;
}

// zeta(1/2, x) for 0 < x <= 1
double hurwitz_half(double x) {
    constexpr int N = 12;
    const double s = 0.5;
    double sum = 0.0;
    for (int n = 0; n < N; ++n) sum += 1.0 / std::sqrt(n + x);
    const double y = N + x;
    sum += std::pow(y, 1.0 - s) / (s - 1.0) + 0.5 / std::sqrt(y);
    double poch = s, ypow = std::pow(y, -s - 1.0), fact = 2.0;
    for (int k = 1; k <= 8; ++k) {
        sum += bernoulli_even(k) / fact * poch * ypow;
        poch *= (s + 2 * k - 1) * (s + 2 * k);
        ypow /= y * y;
        fact *= (2.0 * k + 1) * (2.0 * k + 2);
    }
    return sum;
}

}  // namespace

int kronecker_symbol(std::int64_t d, std::int64_t n) {
    if (n <= 0) throw DomainError("kronecker_symbol: n must be positive");
    int r = 1;
    while ((n & 1) == 0) {
        if ((d & 1) == 0) return 0;
        n >>= 1;
        std::int64_t m = mod_pos(d, 8);
        if (m == 3 || m == 5) r = -r;
    }
    if (n == 1) return r;
    return r * jacobi(mod_pos(d, n), n);
}

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0) return false;
    std::int64_t r = mod_pos(d, 4);
    if (r == 1) return squarefree(d);
    if (r != 0) return false;
    std::int64_t m = d / 4;
    std::int64_t rm = mod_pos(m, 4);
    return (rm == 2 || rm == 3) && squarefree(m);
}

double l_central_quadratic(std::int64_t d, double tol) { return 2.0 * smoothed_sum(d, tol); }

std::complex<double> l_central_quadratic_raw(std::int64_t d, double tol) {
    double s = smoothed_sum(d, tol);
    const std::int64_t q = std::llabs(d);
    std::complex<double> gauss = 0.0;
    for (std::int64_t m = 1; m < q; ++m) {
        int c = kronecker_symbol(d, m);
        if (c != 0) gauss += static_cast<double>(c) * std::polar(1.0, 2.0 * kPi * static_cast<double>(m) / static_cast<double>(q));
    }
    std::complex<double> ia = d < 0 ? std::complex<double>(0.0, 1.0) : std::complex<double>(1.0, 0.0);
    std::complex<double> eps = gauss / (ia * std::sqrt(static_cast<double>(q)));
    // chi is real, so the dual sum equals the direct one
    return s + eps * s;
}

double l_central_quadratic_hurwitz(std::int64_t d) {
    check_discriminant(d, "l_central_quadratic_hurwitz");
    const std::int64_t q = std::llabs(d);
    double s = 0.0;
    for (std::int64_t a = 1; a < q; ++a) {
        int c = kronecker_symbol(d, a);
        if (c != 0) s += c * hurwitz_half(static_cast<double>(a) / static_cast<double>(q));
    }
    return s / std::sqrt(static_cast<double>(q));
}

std::vector<std::int64_t> fundamental_discriminants(std::int64_t D_max) {
    std::vector<std::int64_t> out;
    for (std::int64_t m = 2; m <= D_max; ++m) {
        if (is_fundamental_discriminant(-m)) out.push_back(-m);
        if (is_fundamental_discriminant(m)) out.push_back(m);
    }
    return out;
}

FamilyScanRecord family_scan(std::int64_t D_max, unsigned workers, double tol, std::vector<FamilyValue>* values) {
    if (D_max < 3) throw DomainError("family_scan: D_max must be >= 3");
    if (D_max > kFamilyScanCap) throw DomainError("family_scan: D_max above the 1e6 cap");
    const auto ds = fundamental_discriminants(D_max);
    auto parts = map_blocks<std::vector<double>>(ds.size(), 256, workers, [&](std::size_t b, std::size_t e) {
        std::vector<double> v;
        v.reserve(e - b);
        for (std::size_t i = b; i < e; ++i) {
            double L = l_central_quadratic(ds[i], tol);
            v.push_back(L > 0.0 ? std::log(L) : -std::numeric_limits<double>::infinity());
        }
        return v;
    });
    FamilyScanRecord rec;
    rec.D_max = D_max;
    rec.count = static_cast<std::int64_t>(ds.size());
    rec.max_log_L = -std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    if (values) values->clear();
    for (const auto& p : parts) {
        for (double v : p) {
            std::int64_t d = ds[i++];
            if (values) values->push_back({d, v});
            // ds is ordered by |d|, so strict > keeps the smaller |d| on ties
            if (v > rec.max_log_L) {
                rec.max_log_L = v;
                rec.argmax_d = d;
            }
        }
    }
    const double LD = std::log(static_cast<double>(D_max));
    rec.normalization = std::sqrt(LD * std::log(LD));
    rec.ratio = rec.max_log_L / rec.normalization;
    return rec;
}

}  // namespace lfmax
