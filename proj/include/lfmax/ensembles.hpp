#pragma once

#include "lfmax/rng.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace lfmax {

enum class Kind { Unitary, Symplectic, SpecialOrthogonalEven };

std::string to_string(Kind k);
Kind kind_from_string(const std::string& s);

// Eigenangles of one matrix. For Symplectic/SO only the N/2 angles in [0, pi]
// are stored; the spectrum is their closure under theta -> -theta.
struct Spectrum {
    Kind kind = Kind::Unitary;
    int N = 0;
    std::vector<double> angles;

    std::vector<double> full_angles() const;
};

struct MaxResult {
    double theta_star = 0.0;
    double log_value = 0.0;
};

// Verblunsky coefficients of the CMV model. The characteristic polynomial is
// the degree-N Szego polynomial Phi_N, whose zeros are the eigenvalues.
struct Verblunsky {
    Kind kind = Kind::Unitary;
    int N = 0;
    std::vector<std::complex<double>> alpha;  // size N, |alpha[N-1]| = 1
};

Verblunsky sample_verblunsky(Kind kind, int N, std::uint64_t seed);
Spectrum spectrum_from_verblunsky(const Verblunsky& v);
Spectrum sample_spectrum(Kind kind, int N, std::uint64_t seed);

// log |Phi_N(e^{i theta})| = log |Lambda(theta)| straight from the recurrence.
double log_abs_charpoly(const Verblunsky& v, double theta);
// Same on a uniform grid theta_g = 2 pi g / G, g < G.
std::vector<double> log_abs_charpoly_grid(const Verblunsky& v, int G);

double log_abs_charpoly(const Spectrum& s, double theta);
double im_log_charpoly(const Spectrum& s, double theta);
MaxResult max_log_abs_charpoly(const Spectrum& s);
MaxResult max_log_abs_charpoly(const Verblunsky& v);

double cue_log_moment(int N, double k);
double sp_log_mgf(int N, double s);
double so_log_mgf(int N, double s);

// Z(U,0) = prod_j 2(1 - cos theta_j)
double charpoly_at_one(const Spectrum& s);
double log_charpoly_at_one(const Verblunsky& v);

}  // namespace lfmax
