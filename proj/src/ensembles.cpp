#include "lfmax/ensembles.hpp"

#include "lfmax/errors.hpp"
#include "lfmax/mathfn.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lfmax {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kRenorm = 64;

double wrap_2pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

void check_dimension(Kind kind, int N) {
    if (N < 1) throw DomainError("dimension N must be positive");
    if (kind != Kind::Unitary && N % 2 != 0)
        throw DomainError(to_string(kind) + " requires even N, got " + std::to_string(N));
}

// Beta(s, t) on (-1, 1) with density proportional to (1-x)^{s-1} (1+x)^{t-1}
double sample_signed_beta(Rng& rng, double s, double t) {
    std::gamma_distribution<double> gs(s, 1.0), gt(t, 1.0);
    double a = gt(rng);
    double b = gs(rng);
    return 2.0 * a / (a + b) - 1.0;
}

// Phi_{d-1} and Phi*_{d-1} at z, scaled by a common positive factor.
std::pair<std::complex<double>, std::complex<double>> szego_pair(const Verblunsky& v, std::complex<double> z, int steps, double* logscale) {
    std::complex<double> p = 1.0, q = 1.0;
    double ls = 0.0;
    for (int j = 0; j < steps; ++j) {
        std::complex<double> a = v.alpha[static_cast<std::size_t>(j)];
        std::complex<double> zp = z * p;
        p = zp - std::conj(a) * q;
        q = q - a * zp;
        if ((j + 1) % kRenorm == 0) {
            double s = std::abs(q);
            if (s > 0) {
                p /= s;
                q /= s;
                ls += std::log(s);
            }
        }
    }
    if (logscale) *logscale = ls;
    return {p, q};
}

// alpha_{N-1} z Phi_{N-1} / Phi*_{N-1}; equals 1 exactly at the eigenvalues.
std::complex<double> blaschke_phase(const Verblunsky& v, double theta) {
    std::complex<double> z = std::polar(1.0, theta);
    auto [p, q] = szego_pair(v, z, v.N - 1, nullptr);
    std::complex<double> w = v.alpha.back() * z * p / q;
    return w / std::abs(w);
}

// Eigenvalues of the CMV matrix L M built from the Verblunsky coefficients.
// Used when a coefficient sits so close to the circle that the phase walk
// cannot resolve it on any reasonable grid.
std::vector<std::complex<double>> cmv_eigenvalues(const Verblunsky& v) {
    const int N = v.N;
    auto theta = [&](int j, Eigen::MatrixXcd& m) {
        std::complex<double> a = v.alpha[static_cast<std::size_t>(j)];
        if (j == N - 1) {
            m(j, j) = std::conj(a);
            return;
        }
        double rho = std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
        m(j, j) = std::conj(a);
        m(j, j + 1) = rho;
        m(j + 1, j) = rho;
        m(j + 1, j + 1) = -a;
    };
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(N, N), M = Eigen::MatrixXcd::Zero(N, N);
    M(0, 0) = 1.0;
    for (int j = 0; j < N; j += 2) theta(j, L);
    for (int j = 1; j < N; j += 2) theta(j, M);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(L * M, false);
    if (es.info() != Eigen::Success) throw NumericError("cmv_eigenvalues: eigensolver did not converge");
    std::vector<std::complex<double>> out(es.eigenvalues().data(), es.eigenvalues().data() + N);
    return out;
}

template <class F>
MaxResult refine_max(F&& f, const std::vector<double>& grid, int top) {
    const int G = static_cast<int>(grid.size());
    const double h = kTwoPi / G;
    std::vector<int> cand;
    for (int g = 0; g < G; ++g) {
        double v = grid[static_cast<std::size_t>(g)];
        if (v >= grid[static_cast<std::size_t>((g + G - 1) % G)] && v >= grid[static_cast<std::size_t>((g + 1) % G)]) cand.push_back(g);
    }
    if (cand.empty()) cand.push_back(static_cast<int>(std::max_element(grid.begin(), grid.end()) - grid.begin()));
    std::sort(cand.begin(), cand.end(), [&](int a, int b) { return grid[static_cast<std::size_t>(a)] > grid[static_cast<std::size_t>(b)]; });
    if (static_cast<int>(cand.size()) > top) cand.resize(static_cast<std::size_t>(top));
    MaxResult best{0.0, -std::numeric_limits<double>::infinity()};
    for (int g : cand) {
        double c = g * h;
        auto neg = [&](double th) { return -f(th); };
        auto r = boost::math::tools::brent_find_minima(neg, c - h, c + h, std::numeric_limits<double>::digits / 2 + 4);
        double val = -r.second;
        if (grid[static_cast<std::size_t>(g)] > val) {
            val = grid[static_cast<std::size_t>(g)];
            r.first = c;
        }
        if (val > best.log_value) best = {wrap_2pi(r.first), val};
    }
    return best;
}

}  // namespace

std::string to_string(Kind k) {
    switch (k) {
        case Kind::Unitary: return "unitary";
        case Kind::Symplectic: return "symplectic";
        case Kind::SpecialOrthogonalEven: return "orthogonal";
    }
    return "?";
}

Kind kind_from_string(const std::string& s) {
    if (s == "unitary" || s == "U" || s == "cue") return Kind::Unitary;
    if (s == "symplectic" || s == "Sp" || s == "sp") return Kind::Symplectic;
    if (s == "orthogonal" || s == "SO" || s == "so") return Kind::SpecialOrthogonalEven;
    throw DomainError("unknown ensemble kind '" + s + "'");
}

std::vector<double> Spectrum::full_angles() const {
    if (kind == Kind::Unitary) return angles;
    std::vector<double> out;
    out.reserve(angles.size() * 2);
    for (double a : angles) {
        out.push_back(a);
        out.push_back(wrap_2pi(-a));
    }
    return out;
}

Verblunsky sample_verblunsky(Kind kind, int N, std::uint64_t seed) {
    check_dimension(kind, N);
    Rng rng(seed);
    Verblunsky v;
    v.kind = kind;
    v.N = N;
    v.alpha.resize(static_cast<std::size_t>(N));
    if (kind == Kind::Unitary) {
        // beta = 2: |alpha_k|^2 ~ Beta(1, N-k-1), uniform phase
        for (int k = 0; k + 1 < N; ++k) {
            double m = N - k - 1;
            double r2 = 1.0 - std::pow(1.0 - uniform01(rng), 1.0 / m);
            double phi = kTwoPi * uniform01(rng);
            v.alpha[static_cast<std::size_t>(k)] = std::polar(std::sqrt(r2), phi);
        }
        v.alpha[static_cast<std::size_t>(N - 1)] = std::polar(1.0, kTwoPi * uniform01(rng));
        return v;
    }
    // Real coefficients for the Jacobi ensemble on [-2, 2] with weight
    // (2-x)^a (2+x)^b at beta = 2; a = b = 1/2 gives Sp(N), -1/2 gives SO(N).
    const double ab = kind == Kind::Symplectic ? 0.5 : -0.5;
    const int n2 = N;
    for (int k = 0; k + 1 < n2; ++k) {
        double s, t;
        if (k % 2 == 0) {
            s = (n2 - k - 2) / 2.0 + ab + 1.0;
            t = s;
        } else {
            s = (n2 - k - 3) / 2.0 + 2.0 * ab + 2.0;
            t = (n2 - k - 1) / 2.0;
        }
        v.alpha[static_cast<std::size_t>(k)] = sample_signed_beta(rng, s, t);
    }
    v.alpha[static_cast<std::size_t>(n2 - 1)] = -1.0;
    return v;
}

Spectrum spectrum_from_verblunsky(const Verblunsky& v) {
    Spectrum s;
    s.kind = v.kind;
    s.N = v.N;
    const bool unitary = v.kind == Kind::Unitary;
    const int count = unitary ? v.N : v.N / 2;
    const double lo = 0.0, hi = unitary ? kTwoPi : std::numbers::pi;
    // Prufer phase: the unwrapped argument of blaschke_phase increases by
    // 2 pi between consecutive eigenangles.
    for (int G = 16 * count + 16; G <= 1024 * (count + 1); G *= 2) {
        const double h = (hi - lo) / G;
        std::vector<double> phase(static_cast<std::size_t>(G) + 1);
        std::complex<double> prev = blaschke_phase(v, lo);
        phase[0] = std::arg(prev);
        bool ok = true;
        for (int g = 1; g <= G; ++g) {
            std::complex<double> cur = blaschke_phase(v, lo + g * h);
            double d = std::arg(cur * std::conj(prev));
            if (d < -1e-9) ok = false;  // the phase is increasing
            phase[static_cast<std::size_t>(g)] = phase[static_cast<std::size_t>(g) - 1] + d;
            prev = cur;
        }
        double total = phase.back() - phase.front();
        if (!ok || std::abs(total - kTwoPi * count) > 1e-6) continue;
        s.angles.clear();
        for (int g = 0; g < G; ++g) {
            double p0 = phase[static_cast<std::size_t>(g)], p1 = phase[static_cast<std::size_t>(g) + 1];
            double m = std::ceil(p0 / kTwoPi);
            if (kTwoPi * m == p0 && g > 0) continue;  // counted in the previous cell
            if (kTwoPi * m > p1) continue;
            double a = lo + g * h, b = a + h;
            auto f = [&](double th) { return std::arg(blaschke_phase(v, th)); };
            double fa = f(a), fb = f(b);
            double root;
            if (fa == 0.0) {
                root = a;
            } else if (fb == 0.0) {
                root = b;
            } else {
                std::uintmax_t it = 200;
                auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), it);
                root = 0.5 * (r.first + r.second);
            }
            s.angles.push_back(unitary ? wrap_2pi(root) : root);
        }
        if (static_cast<int>(s.angles.size()) != count) continue;
        std::sort(s.angles.begin(), s.angles.end());
        return s;
    }
    s.angles.clear();
    for (auto z : cmv_eigenvalues(v)) {
        double a = wrap_2pi(std::arg(z));
        if (unitary)
            s.angles.push_back(a);
        else if (std::imag(z) >= 0.0)
            s.angles.push_back(std::min(a, std::numbers::pi));
    }
    if (static_cast<int>(s.angles.size()) != count)
        throw NumericError("spectrum_from_verblunsky: eigenangle extraction failed for N = " + std::to_string(v.N));
    std::sort(s.angles.begin(), s.angles.end());
    return s;
}

Spectrum sample_spectrum(Kind kind, int N, std::uint64_t seed) { return spectrum_from_verblunsky(sample_verblunsky(kind, N, seed)); }

double log_abs_charpoly(const Verblunsky& v, double theta) {
    double ls = 0.0;
    auto [p, q] = szego_pair(v, std::polar(1.0, theta), v.N, &ls);
    (void)q;
    return std::log(std::abs(p)) + ls;
}

std::vector<double> log_abs_charpoly_grid(const Verblunsky& v, int G) {
    const std::size_t n = static_cast<std::size_t>(G);
    std::vector<double> zr(n), zi(n), pr(n, 1.0), pi(n, 0.0), qr(n, 1.0), qi(n, 0.0), ls(n, 0.0);
    for (std::size_t g = 0; g < n; ++g) {
        double th = kTwoPi * static_cast<double>(g) / G;
        zr[g] = std::cos(th);
        zi[g] = std::sin(th);
    }
    for (int j = 0; j < v.N; ++j) {
        const double ar = v.alpha[static_cast<std::size_t>(j)].real(), ai = v.alpha[static_cast<std::size_t>(j)].imag();
        for (std::size_t g = 0; g < n; ++g) {
            double tr = zr[g] * pr[g] - zi[g] * pi[g];
            double ti = zr[g] * pi[g] + zi[g] * pr[g];
            double npr = tr - (ar * qr[g] + ai * qi[g]);
            double npi = ti - (ar * qi[g] - ai * qr[g]);
            double nqr = qr[g] - (ar * tr - ai * ti);
            double nqi = qi[g] - (ar * ti + ai * tr);
            pr[g] = npr;
            pi[g] = npi;
            qr[g] = nqr;
            qi[g] = nqi;
        }
        if ((j + 1) % kRenorm == 0) {
            for (std::size_t g = 0; g < n; ++g) {
                double s = std::hypot(qr[g], qi[g]);
                if (s > 0) {
                    pr[g] /= s;
                    pi[g] /= s;
                    qr[g] /= s;
                    qi[g] /= s;
                    ls[g] += std::log(s);
                }
            }
        }
    }
    std::vector<double> out(n);
    for (std::size_t g = 0; g < n; ++g) out[g] = 0.5 * std::log(pr[g] * pr[g] + pi[g] * pi[g]) + ls[g];
    return out;
}

double log_abs_charpoly(const Spectrum& s, double theta) {
    double acc = 0.0;
    for (double a : s.full_angles()) {
        double d = std::abs(2.0 * std::sin(0.5 * (a - theta)));
        acc += std::log(d);
    }
    return acc;
}

double im_log_charpoly(const Spectrum& s, double theta) {
    double acc = 0.0;
    for (double a : s.full_angles()) {
        double phi = wrap_2pi(a - theta);
        if (phi == 0.0) throw DomainError("im_log_charpoly: theta is an eigenangle");
        // 1 - e^{i phi} = 2 sin(phi/2) e^{i (phi - pi)/2}
        acc += 0.5 * (phi - std::numbers::pi);
    }
    return acc;
}

MaxResult max_log_abs_charpoly(const Spectrum& s) {
    auto full = s.full_angles();
    const int n = static_cast<int>(full.size());
    const int G = 8 * std::max(n, 1);
    std::vector<double> c(full.size()), sn(full.size());
    for (std::size_t i = 0; i < full.size(); ++i) {
        c[i] = std::cos(full[i]);
        sn[i] = std::sin(full[i]);
    }
    auto eval = [&](double th) {
        double ct = std::cos(th), st = std::sin(th);
        double acc = 0.0, prod = 1.0;
        for (std::size_t i = 0; i < full.size(); ++i) {
            // |1 - e^{i(a - th)}|^2 = 2 - 2 cos(a - th)
            prod *= 2.0 - 2.0 * (c[i] * ct + sn[i] * st);
            if ((i & 15) == 15) {
                acc += std::log(prod);
                prod = 1.0;
            }
        }
        return 0.5 * (acc + std::log(prod));
    };
    std::vector<double> grid(static_cast<std::size_t>(G));
    for (int g = 0; g < G; ++g) grid[static_cast<std::size_t>(g)] = eval(kTwoPi * g / G);
    // the product form loses relative accuracy next to a root; finish on the log-sine sum
    auto exact = [&](double th) { return log_abs_charpoly(s, th); };
    MaxResult r = refine_max(eval, grid, 3);
    r.log_value = exact(r.theta_star);
    return r;
}

MaxResult max_log_abs_charpoly(const Verblunsky& v) {
    const int G = 8 * v.N;
    auto grid = log_abs_charpoly_grid(v, G);
    return refine_max([&](double th) { return log_abs_charpoly(v, th); }, grid, 3);
}

double cue_log_moment(int N, double k) {
    if (N < 1) throw DomainError("cue_log_moment: N must be positive");
    if (!(k >= 0.0)) throw DomainError("cue_log_moment: k must be >= 0");
    if (k == 0.0) return 0.0;
    return 2.0 * log_barnes_g(k + 1.0) - log_barnes_g(2.0 * k + 1.0) + log_barnes_g(1.0 + N) + log_barnes_g(1.0 + N + 2.0 * k) -
           2.0 * log_barnes_g(1.0 + N + k);
}

double sp_log_mgf(int N, double s) {
    if (N < 2 || N % 2 != 0) throw DomainError("sp_log_mgf: N must be even and positive");
    if (!(s > -0.5)) throw DomainError("sp_log_mgf: s must be > -1/2");
    if (s == 0.0) return 0.0;
    const int h = N / 2;
    double acc = N * s * std::numbers::ln2;
    for (int j = 1; j <= h; ++j)
        acc += log_gamma(h + j + 1.0) + log_gamma(s + j + 0.5) - log_gamma(j + 0.5) - log_gamma(s + h + j + 1.0);
    return acc;
}

double so_log_mgf(int N, double s) {
    if (N < 2 || N % 2 != 0) throw DomainError("so_log_mgf: N must be even and positive");
    if (!(s > -0.5)) throw DomainError("so_log_mgf: s must be > -1/2");
    if (s == 0.0) return 0.0;
    const int h = N / 2;
    double acc = N * s * std::numbers::ln2;
    for (int j = 1; j <= h; ++j)
        acc += log_gamma(h + j - 1.0) + log_gamma(s + j - 0.5) - log_gamma(j - 0.5) - log_gamma(s + h + j - 1.0);
    return acc;
}

double charpoly_at_one(const Spectrum& s) {
    if (s.kind == Kind::Unitary) throw DomainError("charpoly_at_one: needs a symplectic or orthogonal spectrum");
    double prod = 1.0;
    for (double a : s.angles) {
        double h = std::sin(0.5 * a);
        prod *= 4.0 * h * h;
    }
    return prod;
}

double log_charpoly_at_one(const Verblunsky& v) { return log_abs_charpoly(v, 0.0); }

}  // namespace lfmax
