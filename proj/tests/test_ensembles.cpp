#include "lfmax/ensembles.hpp"
#include "lfmax/errors.hpp"
#include "lfmax/rng.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace lfmax;

namespace {

// Haar unitary by QR of a complex Ginibre matrix with the phase fix on R's diagonal.
Eigen::MatrixXcd haar_qr(int N, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd Z(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) Z(i, j) = {g(rng), g(rng)};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
    Eigen::MatrixXcd Q = qr.householderQ();
    Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < N; ++j) Q.col(j) *= R(j, j) / std::abs(R(j, j));
    return Q;
}

// two-sample Kolmogorov-Smirnov statistic
double ks_stat(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

}  // namespace

TEST_CASE("CMV sampler agrees in law with a QR-built Haar matrix") {
    const int N = 6, n = 3000;
    std::mt19937_64 rng(2024);
    std::vector<double> qr_vals, cmv_vals, qr_tr, cmv_tr;
    for (int i = 0; i < n; ++i) {
        Eigen::MatrixXcd U = haar_qr(N, rng);
        std::complex<double> det = (Eigen::MatrixXcd::Identity(N, N) - U).determinant();
        qr_vals.push_back(std::log(std::abs(det)));
        qr_tr.push_back(std::abs(U.trace()));

        Spectrum s = sample_spectrum(Kind::Unitary, N, trial_seed(99, i));
        cmv_vals.push_back(log_abs_charpoly(s, 0.0));
        std::complex<double> tr = 0.0;
        for (double a : s.angles) tr += std::polar(1.0, a);
        cmv_tr.push_back(std::abs(tr));
    }
    // critical value at alpha = 0.001 is 1.95 sqrt(2/n)
    double crit = 1.95 * std::sqrt(2.0 / n);
    CHECK(ks_stat(qr_vals, cmv_vals) < crit);
    CHECK(ks_stat(qr_tr, cmv_tr) < crit);
}

TEST_CASE("CUE eigenangles are uniform and E|Tr U|^2 = 1") {
    const int N = 10, n = 4000;
    std::vector<double> angles;
    double tr2 = 0.0;
    for (int i = 0; i < n; ++i) {
        Spectrum s = sample_spectrum(Kind::Unitary, N, trial_seed(5, i));
        REQUIRE(s.angles.size() == static_cast<std::size_t>(N));
        std::complex<double> tr = 0.0;
        for (double a : s.angles) tr += std::polar(1.0, a);
        tr2 += std::norm(tr);
        angles.push_back(s.angles[static_cast<std::size_t>(i % N)]);
    }
    tr2 /= n;
    CHECK(std::abs(tr2 - 1.0) < 0.1);
    std::sort(angles.begin(), angles.end());
    double d = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        double F = angles[i] / (2 * std::numbers::pi);
        d = std::max({d, std::abs(F - double(i) / n), std::abs(F - double(i + 1) / n)});
    }
    CHECK(d < 1.95 / std::sqrt(double(n)));
}

TEST_CASE("Sp and SO spectra close under conjugation") {
    for (Kind k : {Kind::Symplectic, Kind::SpecialOrthogonalEven}) {
        Spectrum s = sample_spectrum(k, 12, 77);
        CHECK(s.angles.size() == 6);
        for (double a : s.angles) {
            CHECK(a >= 0.0);
            CHECK(a <= std::numbers::pi);
        }
        CHECK(s.full_angles().size() == 12);
        // |Lambda(theta)| = |Lambda(-theta)|
        CHECK(log_abs_charpoly(s, 0.7) == doctest::Approx(log_abs_charpoly(s, -0.7)));
        Verblunsky v = sample_verblunsky(k, 12, 77);
        CHECK(std::log(charpoly_at_one(s)) == doctest::Approx(log_charpoly_at_one(v)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(sample_spectrum(Kind::Symplectic, 7, 1), DomainError);
}

TEST_CASE("recurrence and eigenangle evaluations agree") {
    Verblunsky v = sample_verblunsky(Kind::Unitary, 30, 4);
    Spectrum s = spectrum_from_verblunsky(v);
    auto grid = log_abs_charpoly_grid(v, 64);
    for (int g = 0; g < 64; g += 7) {
        double th = 2 * std::numbers::pi * g / 64;
        CHECK(grid[static_cast<std::size_t>(g)] == doctest::Approx(log_abs_charpoly(v, th)).epsilon(1e-10));
        CHECK(log_abs_charpoly(s, th) == doctest::Approx(log_abs_charpoly(v, th)).epsilon(1e-8).scale(1.0));
    }
    MaxResult a = max_log_abs_charpoly(s), b = max_log_abs_charpoly(v);
    CHECK(a.log_value == doctest::Approx(b.log_value).epsilon(1e-8));
    CHECK(a.log_value >= *std::max_element(grid.begin(), grid.end()) - 1e-12);
}

TEST_CASE("coefficients next to the unit circle") {
    // the phase walk cannot resolve this one; the matrix route takes over
    Verblunsky v = sample_verblunsky(Kind::Unitary, 8, 1);
    v.alpha[3] = std::polar(std::sqrt(1.0 - 1e-15), 0.4);
    Spectrum s = spectrum_from_verblunsky(v);
    REQUIRE(s.angles.size() == 8);
    for (double th : {0.1, 1.0, 3.0, 5.5}) CHECK(log_abs_charpoly(s, th) == doctest::Approx(log_abs_charpoly(v, th)).epsilon(1e-7).scale(1.0));
    for (double a : s.angles) CHECK(log_abs_charpoly(v, a) < -10.0);
}

TEST_CASE("Im log Lambda(0) is the centered angle sum") {
    Spectrum s = sample_spectrum(Kind::Unitary, 9, 31);
    double ref = 0.0;
    for (double a : s.angles) ref += 0.5 * (a - std::numbers::pi);
    CHECK(im_log_charpoly(s, 0.0) == doctest::Approx(ref));
}

TEST_CASE("exact moments") {
    for (int N : {1, 2, 5, 50, 200}) CHECK(cue_log_moment(N, 1.0) == doctest::Approx(std::log(N + 1.0)).epsilon(1e-10));
    // k = 2: (N+1)(N+2)^2(N+3)/12
    for (int N : {1, 4, 30}) {
        double n = N;
        CHECK(cue_log_moment(N, 2.0) == doctest::Approx(std::log((n + 1) * (n + 2) * (n + 2) * (n + 3) / 12.0)).epsilon(1e-11));
    }
    CHECK(cue_log_moment(10, 0.0) == 0.0);
    CHECK(sp_log_mgf(20, 0.0) == 0.0);
    CHECK(so_log_mgf(20, 0.0) == 0.0);
    // Sp(2) = SU(2): Z = 2 - 2 cos theta, theta with density (2/pi) sin^2 theta,
    // so E Z = 2 and E Z^2 = 4 + 4 E cos^2 = 5
    CHECK(std::exp(sp_log_mgf(2, 1.0)) == doctest::Approx(2.0));
    CHECK(std::exp(sp_log_mgf(2, 2.0)) == doctest::Approx(5.0));
    // SO(2): theta uniform, E Z^2 = 4 + 2 = 6
    CHECK(std::exp(so_log_mgf(2, 2.0)) == doctest::Approx(6.0));
    CHECK_THROWS_AS(sp_log_mgf(5, 1.0), DomainError);
}

TEST_CASE("same seed, same spectrum") {
    auto a = sample_spectrum(Kind::Unitary, 40, 123), b = sample_spectrum(Kind::Unitary, 40, 123);
    CHECK(a.angles == b.angles);
    CHECK(kind_from_string(to_string(Kind::SpecialOrthogonalEven)) == Kind::SpecialOrthogonalEven);
}
