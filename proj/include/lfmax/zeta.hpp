#pragma once

#include "lfmax/mathfn.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace lfmax {

struct ZeroTable {
    enum class Source { Computed, Ingested };
    std::vector<double> ordinates;  // strictly ascending, positive
    Source source = Source::Computed;
    double t_max = 0.0;             // covered range is (0, t_max]

    std::size_t count_upto(double t) const;
};

struct HybridDecomposition {
    double t = 0.0;
    double X = 0.0;
    std::complex<double> p_value;
    std::complex<double> z_value;
    std::complex<double> zeta_value;
    double rel_residual = 0.0;
};

struct ScanRecord {
    double t0 = 0.0, t1 = 0.0;
    double step = 0.0;
    double argmax_t = 0.0;
    double max_log_abs_zeta = 0.0;
    double conjecture_log = 0.0;  // sqrt(1/2 log t1 log log t1)
    double ratio = 0.0;
};

// zeta(s) by Euler-Maclaurin summation (any s != 1).
std::complex<double> zeta_euler_maclaurin(std::complex<double> s);

double hardy_z_euler_maclaurin(double t);
// Riemann-Siegel main sum plus the C0..C6 corrections.
double hardy_z_riemann_siegel(double t);

// Euler-Maclaurin below t = 30, Riemann-Siegel above.
double hardy_z(double t);
std::complex<double> zeta_critical(double t);

// t/(2 pi) log(t/(2 pi e)) + 7/8
double zero_count_main(double t);

// n-th Gram point (theta(g_n) = n pi), n >= 0.
double gram_point(long n);

inline constexpr double kZeroTableCap = 1e5;

ZeroTable find_zeros(double t_max);
ZeroTable ingest_zero_table(const std::string& path);

double s_of_t(double t, const ZeroTable& zeros);

std::complex<double> p_x(std::complex<double> s, double X, const VonMangoldtTable& table);

// Bump is exp(-1/(1-tau^2)); Sharp is exp(-2/(1-tau^2)), a more peaked
// alternative used to check that results do not hinge on the choice of u.
enum class Smoothing { Bump, Sharp };

// Normalized smooth weight on [e^{1-1/X}, e].
double u_weight(double x, double X, Smoothing w = Smoothing::Bump);
// U(z) = int u(x) E1(z log x) dx by Gauss-Legendre with `nodes` points.
std::complex<double> big_u(std::complex<double> z, double X, int nodes = 64, Smoothing w = Smoothing::Bump);

// P_X with each prime power weighted by v(n) = int_{n^{1/log X}}^e u(x) dx.
// With this weighting P_X Z_X reproduces zeta up to the X^{K+2}/(t log X)^K
// term alone, so it serves as an independent check on z_x.
std::complex<double> p_x_smoothed(std::complex<double> s, double X, const VonMangoldtTable& table,
                                  Smoothing w = Smoothing::Bump);

// Half-width W (in t) of the zero window used by z_x.
double default_zero_window(double X);

// exp(-sum_rho U((s - rho) log X)) over rho = 1/2 +- i gamma with |Im rho - Im s| <= W.
std::complex<double> z_x(std::complex<double> s, double X, const ZeroTable& zeros, std::optional<double> window = std::nullopt,
                         Smoothing w = Smoothing::Bump);

HybridDecomposition hybrid_residual(double t, double X, const ZeroTable& zeros, const VonMangoldtTable& table,
                                    std::optional<double> window = std::nullopt, Smoothing w = Smoothing::Bump);

ScanRecord scan_max(double t0, double t1, double A = 0.5, const ZeroTable* zeros = nullptr, unsigned workers = 0);

}  // namespace lfmax
