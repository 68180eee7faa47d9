#include "lfmax/zeta.hpp"

#include "lfmax/errors.hpp"
#include "lfmax/parallel.hpp"
#include "lfmax/detail/gauss_legendre.hpp"
#include "lfmax/detail/rs_coeffs.hpp"

#include <boost/math/special_functions/lambert_w.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>

namespace lfmax {

namespace {

using cd = std::complex<double>;

// B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}, k = 1..40
const std::array<double, 41>& bernoulli_over_factorial() {
    static const std::array<double, 41> tab = [] {
        std::array<double, 41> t{};
        for (int k = 1; k <= 40; ++k) {
            double z;
            if (k == 1) {
                z = kPi * kPi / 6.0;
            } else {
                z = 0.0;
                for (int n = 2000; n >= 1; --n) z += std::pow(static_cast<double>(n), -2.0 * k);
                z += std::pow(2000.5, 1.0 - 2.0 * k) / (2.0 * k - 1.0);
            }
            double v = 2.0 * z * std::pow(2.0 * kPi, -2.0 * k);
            t[static_cast<std::size_t>(k)] = (k % 2 == 1) ? v : -v;
        }
        return t;
    }();
    return tab;
}

template <std::size_t M>
double horner(const double (&c)[M], double x) {
    double acc = 0.0;
    for (std::size_t i = M; i-- > 0;) acc = acc * x + c[i];
    return acc;
}

double main_count(double t) { return t / (2.0 * kPi) * std::log(t / (2.0 * kPi * std::exp(1.0))) + 7.0 / 8.0; }

struct RefineTol {
    bool operator()(double a, double b) const { return std::abs(b - a) < 1e-10; }
};

double refine_root(double a, double b, double fa, double fb) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve([](double t) { return hardy_z(t); }, a, b, fa, fb, RefineTol{}, iters);
    return 0.5 * (r.first + r.second);
}

// Sign changes of Z on the grid lo + i*h, plus pairs hidden between two grid
// points (a local extremum of the wrong sign).
std::vector<double> scan_roots(double lo, double hi, double h) {
    auto n = static_cast<std::size_t>(std::ceil((hi - lo) / h));
    std::vector<double> ts(n + 1), zs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) ts[i] = std::min(hi, lo + static_cast<double>(i) * h);
    auto parts = map_blocks<std::vector<double>>(n + 1, 4096, 0, [&](std::size_t b, std::size_t e) {
        std::vector<double> v;
        v.reserve(e - b);
        for (std::size_t i = b; i < e; ++i) v.push_back(hardy_z(ts[i]));
        return v;
    });
    std::size_t at = 0;
    for (auto& p : parts)
        for (double v : p) zs[at++] = v;

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 <= n; ++i) {
        if (zs[i] == 0.0) {
            roots.push_back(ts[i]);
            continue;
        }
        if (zs[i] * zs[i + 1] < 0.0) {
            roots.push_back(refine_root(ts[i], ts[i + 1], zs[i], zs[i + 1]));
            continue;
        }
        if (i == 0 || i + 1 > n) continue;
        double sg = zs[i] > 0 ? 1.0 : -1.0;
        if (zs[i - 1] * sg <= 0.0 || zs[i + 1] * sg <= 0.0) continue;
        if (std::abs(zs[i]) > std::abs(zs[i - 1]) || std::abs(zs[i]) > std::abs(zs[i + 1])) continue;
        // |Z| dips towards zero: look for a sign flip at the bottom
        auto m = boost::math::tools::brent_find_minima([&](double u) { return sg * hardy_z(ts[i] + u); }, -h, h, 40);
        if (m.second < 0.0) {
            double tm = ts[i] + m.first;
            roots.push_back(refine_root(ts[i - 1], tm, zs[i - 1], hardy_z(tm)));
            roots.push_back(refine_root(tm, ts[i + 1], hardy_z(tm), zs[i + 1]));
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(), [](double a, double b) { return std::abs(a - b) < 1e-8; }), roots.end());
    return roots;
}

// Mean of N(g_n) - (n+1) over 25 consecutive Gram points, for each window start.
struct GramWindow {
    double lo, hi, mean;
};

std::vector<GramWindow> gram_audit(const std::vector<double>& roots, double t_max) {
    std::vector<double> g;
    for (long n = 0;; ++n) {
        double gn = gram_point(n);
        if (gn > t_max) break;
        g.push_back(gn);
    }
    std::vector<double> d(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
        auto c = std::upper_bound(roots.begin(), roots.end(), g[n]) - roots.begin();
        d[n] = static_cast<double>(c) - static_cast<double>(n + 1);
    }
    constexpr std::size_t W = 25;
    std::vector<GramWindow> out;
    if (g.size() < W) {
        if (!g.empty()) {
            double s = 0;
            for (double v : d) s += v;
            out.push_back({g.front(), g.back(), s / static_cast<double>(d.size())});
        }
        return out;
    }
    double s = 0;
    for (std::size_t i = 0; i < W; ++i) s += d[i];
    for (std::size_t i = 0;; ++i) {
        out.push_back({g[i], g[i + W - 1], s / W});
        if (i + W >= g.size()) break;
        s += d[i + W] - d[i];
    }
    return out;
}

double bump_integral(Smoothing w) {
    auto compute = [](double c) {
        gsl_integration_workspace* ws = gsl_integration_workspace_alloc(200);
        gsl_function F;
        F.function = [](double tau, void* p) {
            double cc = *static_cast<double*>(p);
            double q = 1.0 - tau * tau;
            return q <= 0.0 ? 0.0 : std::exp(-cc / q);
        };
        F.params = &c;
        double r = 0, e = 0;
        gsl_error_handler_t* old = gsl_set_error_handler_off();
        int status = gsl_integration_qag(&F, -1.0, 1.0, 1e-16, 1e-13, 200, GSL_INTEG_GAUSS61, ws, &r, &e);
        gsl_set_error_handler(old);
        gsl_integration_workspace_free(ws);
        if (status != GSL_SUCCESS && !(r > 0.0 && e < 1e-12 * r)) throw NumericError("u_weight: normalization integral failed");
        return r;
    };
    static const double bump = compute(1.0);
    static const double sharp = compute(2.0);
    return w == Smoothing::Bump ? bump : sharp;
}

}  // namespace

std::size_t ZeroTable::count_upto(double t) const {
    return static_cast<std::size_t>(std::upper_bound(ordinates.begin(), ordinates.end(), t) - ordinates.begin());
}

cd zeta_euler_maclaurin(cd s) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw DomainError("zeta_euler_maclaurin: non-finite argument");
    if (s == cd(1.0, 0.0)) throw DomainError("zeta_euler_maclaurin: pole at s = 1");
    const auto& bf = bernoulli_over_factorial();
    const int N = 20 + static_cast<int>(std::ceil(std::abs(s)));
    cd sum = 0.0;
    for (int n = N - 1; n >= 1; --n) sum += std::exp(-s * std::log(static_cast<double>(n)));
    const double logN = std::log(static_cast<double>(N));
    const cd Ns = std::exp(-s * logN);
    sum += Ns * static_cast<double>(N) / (s - 1.0) + 0.5 * Ns;
    cd poch = s;                    // s (s+1) ... (s+2k-2)
    cd npow = Ns / static_cast<double>(N);  // N^{-s-2k+1}
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 40; ++k) {
        cd term = bf[static_cast<std::size_t>(k)] * poch * npow;
        double a = std::abs(term);
        if (a > prev) break;  // asymptotic series turned
        sum += term;
        if (a < 1e-17 * std::abs(sum)) break;
        prev = a;
        poch *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
        npow /= static_cast<double>(N) * N;
    }
    return sum;
}

double hardy_z_euler_maclaurin(double t) {
    cd z = zeta_euler_maclaurin(cd(0.5, t));
    return (std::exp(cd(0.0, riemann_siegel_theta(t))) * z).real();
}

double hardy_z_riemann_siegel(double t) {
    if (!std::isfinite(t)) throw DomainError("hardy_z_riemann_siegel: non-finite t");
    t = std::abs(t);
    if (t < 10.0) throw DomainError("hardy_z_riemann_siegel: needs |t| >= 10");
    const double a = std::sqrt(t / (2.0 * kPi));
    const auto nu = static_cast<long>(std::floor(a));
    const double p = a - static_cast<double>(nu);
    const double th = riemann_siegel_theta(t);
    double main = 0.0;
    for (long n = 1; n <= nu; ++n) {
        double ln = std::log(static_cast<double>(n));
        main += std::cos(th - t * ln) / std::sqrt(static_cast<double>(n));
    }
    main *= 2.0;
    const double x = p - 0.5;
    const double u = 1.0 / a;  // (2 pi / t)^{1/2}
    using namespace detail;
    double corr = horner(rs_c6, x);
    corr = corr * u + horner(rs_c5, x);
    corr = corr * u + horner(rs_c4, x);
    corr = corr * u + horner(rs_c3, x);
    corr = corr * u + horner(rs_c2, x);
    corr = corr * u + horner(rs_c1, x);
    corr = corr * u + horner(rs_c0, x);
    double sign = (nu % 2 == 1) ? 1.0 : -1.0;  // (-1)^{nu-1}
    return main + sign * std::sqrt(u) * corr;
}

double hardy_z(double t) {
    if (!std::isfinite(t)) throw DomainError("hardy_z: non-finite t");
    double at = std::abs(t);
    return at < 30.0 ? hardy_z_euler_maclaurin(at) : hardy_z_riemann_siegel(at);
}

cd zeta_critical(double t) {
    if (!std::isfinite(t)) throw DomainError("zeta_critical: non-finite t");
    if (t < 0.0) return std::conj(zeta_critical(-t));
    return hardy_z(t) * std::exp(cd(0.0, -riemann_siegel_theta(t)));
}

double zero_count_main(double t) {
    if (!(t > 0.0)) throw DomainError("zero_count_main: need t > 0");
    return main_count(t);
}

double gram_point(long n) {
    if (n < -1) throw DomainError("gram_point: need n >= -1");
    // theta(t) ~ t/2 log(t/(2 pi e)) - pi/8
    double w = boost::math::lambert_w0((static_cast<double>(n) + 0.125) / std::exp(1.0));
    double g = 2.0 * kPi * std::exp(1.0 + w);
    for (int it = 0; it < 50; ++it) {
        double f = riemann_siegel_theta(g) - static_cast<double>(n) * kPi;
        double dg = f / (0.5 * std::log(g / (2.0 * kPi)));
        g -= dg;
        if (std::abs(dg) < 1e-13 * g) break;
    }
    return g;
}

ZeroTable find_zeros(double t_max) {
    if (!std::isfinite(t_max) || t_max <= 0.0) throw DomainError("find_zeros: t_max must be positive");
    if (t_max > kZeroTableCap) throw DomainError("find_zeros: t_max above the 1e5 cap; ingest a zero table instead");
    std::vector<double> roots = scan_roots(0.0, t_max, 0.05);

    auto audit = gram_audit(roots, t_max);
    bool densified = false;
    for (const auto& w : audit) {
        if (w.mean <= -1.0) {
            double lo = std::max(0.0, w.lo - 1.0), hi = std::min(t_max, w.hi + 1.0);
            auto extra = scan_roots(lo, hi, 0.005);
            roots.insert(roots.end(), extra.begin(), extra.end());
            densified = true;
        }
    }
    if (densified) {
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end(), [](double a, double b) { return std::abs(a - b) < 1e-8; }),
                    roots.end());
        audit = gram_audit(roots, t_max);
    }
    for (const auto& w : audit) {
        if (std::abs(w.mean) >= 2.0) {
            std::ostringstream os;
            os << "find_zeros: zero count drifts from the main term by " << w.mean << " on [" << w.lo << ", " << w.hi
               << "]; suspected missed zero";
            throw IntegrityError(os.str());
        }
    }
    ZeroTable out;
    roots.erase(std::remove_if(roots.begin(), roots.end(), [&](double r) { return r <= 0.0 || r > t_max; }), roots.end());
    out.ordinates = std::move(roots);
    out.source = ZeroTable::Source::Computed;
    out.t_max = t_max;
    return out;
}

ZeroTable ingest_zero_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ResourceError("ingest_zero_table: cannot open " + path);
    ZeroTable out;
    out.source = ZeroTable::Source::Ingested;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        auto e = line.find_last_not_of(" \t\r");
        const char* first = line.data() + b;
        const char* last = line.data() + e + 1;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || !std::isfinite(v) || v <= 0.0)
            throw FormatError(path + ":" + std::to_string(lineno) + ": not a positive decimal ordinate");
        if (!out.ordinates.empty() && v <= out.ordinates.back())
            throw FormatError(path + ":" + std::to_string(lineno) + ": ordinates must be strictly ascending");
        out.ordinates.push_back(v);
    }
    out.t_max = out.ordinates.empty() ? 0.0 : out.ordinates.back();
    std::size_t check = std::min<std::size_t>(10, out.ordinates.size());
    for (std::size_t i = 0; i < check; ++i) {
        double g = out.ordinates[i];
        double lo = std::max(1e-3, g - 1e-3);
        if (hardy_z(lo) * hardy_z(g + 1e-3) > 0.0)
            throw IntegrityError(path + ": entry " + std::to_string(i + 1) + " (" + std::to_string(g) +
                                 ") is not a sign change of Z within 1e-3");
    }
    return out;
}

double s_of_t(double t, const ZeroTable& zeros) {
    if (!std::isfinite(t) || t <= 0.0 || t > zeros.t_max)
        throw DomainError("s_of_t: t must lie in the covered range (0, " + std::to_string(zeros.t_max) + "]");
    if (std::binary_search(zeros.ordinates.begin(), zeros.ordinates.end(), t)) throw DomainError("s_of_t: t is an ordinate");
    return static_cast<double>(zeros.count_upto(t)) - main_count(t);
}

cd p_x(cd s, double X, const VonMangoldtTable& table) {
    if (!std::isfinite(X)) throw DomainError("p_x: X must be finite");
    if (X < 2.0) return 1.0;
    if (std::floor(X) > static_cast<double>(table.limit)) throw DomainError("p_x: X exceeds the von Mangoldt table");
    cd sum = 0.0;
    for (std::uint32_t p : table.primes) {
        if (p > X) break;
        double lp = std::log(static_cast<double>(p));
        double pk = p;
        for (int k = 1; pk <= X; ++k, pk *= p) sum += std::exp(-s * (k * lp)) / static_cast<double>(k);
    }
    return std::exp(sum);
}

double u_weight(double x, double X, Smoothing w) {
    if (!(X > 1.0) || !std::isfinite(X)) throw DomainError("u_weight: need X > 1");
    const double a = std::exp(1.0 - 1.0 / X), b = std::exp(1.0);
    if (!(x > a) || !(x < b)) return 0.0;
    const double h = 0.5 * (b - a);
    const double tau = (x - 0.5 * (a + b)) / h;
    const double q = 1.0 - tau * tau;
    if (q <= 0.0) return 0.0;
    const double c = w == Smoothing::Bump ? 1.0 : 2.0;
    return std::exp(-c / q) / (bump_integral(w) * h);
}

cd big_u(cd z, double X, int nodes, Smoothing w) {
    if (nodes < 2) throw DomainError("big_u: need at least 2 nodes");
    if (!(X > 1.0)) throw DomainError("big_u: need X > 1");
    if (z.real() < 0.0) throw DomainError("big_u: need Re z >= 0");
    const double a = std::exp(1.0 - 1.0 / X), b = std::exp(1.0);
    const auto& gl = detail::gauss_legendre(static_cast<std::size_t>(nodes));
    return detail::gl_integrate(gl, [&](double x) { return u_weight(x, X, w) * exp_integral_e1(z * std::log(x)); }, a, b);
}

cd p_x_smoothed(cd s, double X, const VonMangoldtTable& table, Smoothing w) {
    if (!std::isfinite(X) || !(X > 1.0)) throw DomainError("p_x_smoothed: need finite X > 1");
    if (X < 2.0) return 1.0;
    if (std::floor(X) > static_cast<double>(table.limit)) throw DomainError("p_x_smoothed: X exceeds the von Mangoldt table");
    const double a = std::exp(1.0 - 1.0 / X), b = std::exp(1.0), logX = std::log(X);
    const auto& gl = detail::gauss_legendre(128);
    cd sum = 0.0;
    for (std::uint32_t p : table.primes) {
        if (p > X) break;
        double lp = std::log(static_cast<double>(p));
        double pk = p;
        for (int k = 1; pk <= X; ++k, pk *= p) {
            double x0 = std::exp(k * lp / logX);
            double v = x0 <= a ? 1.0 : detail::gl_integrate(gl, [&](double x) { return u_weight(x, X, w); }, x0, b);
            sum += v * std::exp(-s * (k * lp)) / static_cast<double>(k);
        }
    }
    return std::exp(sum);
}

double default_zero_window(double X) {
    if (!(X > 1.0)) throw DomainError("default_zero_window: need X > 1");
    // On the critical line U(iy) decays like the Fourier transform of the bump,
    // not like e^{-z}, so no 1e-9 cutoff is reachable with a finite table.
    // At W = max(40, 2X) the omitted zeros change Z_X by about 1e-2 for
    // X <= 40, t <= 1000; W -> infinity moves the sharp-P_X residual by < 0.01.
    return std::max(40.0, 2.0 * X);
}

cd z_x(cd s, double X, const ZeroTable& zeros, std::optional<double> window, Smoothing w) {
    if (!(X > 1.0)) throw DomainError("z_x: need X > 1");
    if (s.real() < 0.5) throw DomainError("z_x: need Re s >= 1/2");
    const double W = window.value_or(default_zero_window(X));
    const double t = s.imag();
    if (std::abs(t) + W > zeros.t_max) {
        std::ostringstream os;
        os << "z_x: zeros must cover (0, " << std::abs(t) + W << "] for a window of half-width " << W << " around t = " << t
           << "; table covers (0, " << zeros.t_max << "]";
        throw DomainError(os.str());
    }
    const double logX = std::log(X);
    cd sum = 0.0;
    auto add = [&](double gamma) {
        cd d = s - cd(0.5, gamma);
        if (d == cd(0.0, 0.0)) throw DomainError("z_x: s is at a listed zero");
        sum += big_u(d * logX, X, 64, w);
    };
    auto lo = std::lower_bound(zeros.ordinates.begin(), zeros.ordinates.end(), t - W);
    auto hi = std::upper_bound(zeros.ordinates.begin(), zeros.ordinates.end(), t + W);
    for (auto it = lo; it != hi; ++it) add(*it);
    lo = std::lower_bound(zeros.ordinates.begin(), zeros.ordinates.end(), -t - W);
    hi = std::upper_bound(zeros.ordinates.begin(), zeros.ordinates.end(), -t + W);
    for (auto it = lo; it != hi; ++it) add(-*it);
    return std::exp(-sum);
}

HybridDecomposition hybrid_residual(double t, double X, const ZeroTable& zeros, const VonMangoldtTable& table,
                                    std::optional<double> window, Smoothing w) {
    HybridDecomposition h;
    h.t = t;
    h.X = X;
    const cd s(0.5, t);
    h.p_value = p_x(s, X, table);
    h.z_value = z_x(s, X, zeros, window, w);
    h.zeta_value = zeta_critical(t);
    constexpr double floor = 1e-12;
    h.rel_residual = std::abs(h.zeta_value - h.p_value * h.z_value) / std::max(std::abs(h.zeta_value), floor);
    return h;
}

ScanRecord scan_max(double t0, double t1, double A, const ZeroTable* zeros, unsigned workers) {
    if (!std::isfinite(t0) || !std::isfinite(t1) || t0 < 0.0 || !(t0 < t1) || t1 > 1e7)
        throw DomainError("scan_max: need 0 <= t0 < t1 <= 1e7");
    if (!(A > 0.0)) throw DomainError("scan_max: need A > 0");
    ScanRecord rec;
    rec.t0 = t0;
    rec.t1 = t1;
    rec.step = A / std::log(std::max(t1, std::exp(1.0)));
    const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / rec.step));
    auto at = [&](std::size_t i) { return std::min(t1, t0 + static_cast<double>(i) * rec.step); };
    auto f = [](double t) { return std::log(std::abs(hardy_z(t))); };

    // per block: the few best grid-local maxima (index, value)
    struct Cand {
        double t, v;
    };
    constexpr std::size_t keep = 4;
    auto parts = map_blocks<std::vector<Cand>>(n + 1, 8192, workers, [&](std::size_t b, std::size_t e) {
        std::vector<Cand> best;
        double prev = b > 0 ? f(at(b - 1)) : -std::numeric_limits<double>::infinity();
        double cur = f(at(b));
        for (std::size_t i = b; i < e; ++i) {
            double next = i + 1 <= n ? f(at(i + 1)) : -std::numeric_limits<double>::infinity();
            if (cur >= prev && cur >= next) {
                best.push_back({at(i), cur});
                std::sort(best.begin(), best.end(), [](const Cand& x, const Cand& y) { return x.v > y.v; });
                if (best.size() > keep) best.pop_back();
            }
            prev = cur;
            cur = next;
        }
        return best;
    });
    std::vector<Cand> all;
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    if (zeros) {
        // midpoints between consecutive zeros are natural champions
        const auto& o = zeros->ordinates;
        for (std::size_t i = 0; i + 1 < o.size(); ++i) {
            double m = 0.5 * (o[i] + o[i + 1]);
            if (m >= t0 && m <= t1) all.push_back({m, f(m)});
        }
    }
    std::stable_sort(all.begin(), all.end(), [](const Cand& x, const Cand& y) { return x.v > y.v; });
    if (all.size() > 8) all.resize(8);

    rec.argmax_t = t0;
    rec.max_log_abs_zeta = -std::numeric_limits<double>::infinity();
    for (const auto& c : all) {
        double lo = std::max(t0, c.t - rec.step) - c.t, hi = std::min(t1, c.t + rec.step) - c.t;
        double tc = c.t, vc = c.v;
        if (hi > lo) {
            // golden-section/Brent in the offset so the tolerance is absolute in t
            auto m = boost::math::tools::brent_find_minima([&](double u) { return -f(c.t + u); }, lo, hi, 30);
            if (-m.second > vc) {
                tc = c.t + m.first;
                vc = -m.second;
            }
        }
        if (vc > rec.max_log_abs_zeta || (vc == rec.max_log_abs_zeta && tc < rec.argmax_t)) {
            rec.max_log_abs_zeta = vc;
            rec.argmax_t = tc;
        }
    }
    if (t1 > std::exp(1.0)) {
        double L = std::log(t1);
        rec.conjecture_log = std::sqrt(0.5 * L * std::log(L));
        rec.ratio = rec.max_log_abs_zeta / rec.conjecture_log;
    } else {
        rec.conjecture_log = std::numeric_limits<double>::quiet_NaN();
        rec.ratio = std::numeric_limits<double>::quiet_NaN();
    }
    return rec;
}

}  // namespace lfmax
