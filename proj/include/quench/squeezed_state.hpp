#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

// Even-Fock expansion of the squeezed vacuum S(r e^{i theta})|0>.
//
// Amplitudes follow the two-step recurrence
//   c_0 = (cosh r)^{-1/2},
//   c_{2n+2} = c_2n * (-e^{i theta} tanh r) * sqrt((2n+1)(2n+2)) / (2n+2),
// which avoids factorial overflow entirely. Odd amplitudes vanish and are
// never stored: amps[k] multiplies the Fock state |2k>.

namespace quench {

inline constexpr int kTruncationCap = 4096;  // highest Fock index permitted
inline constexpr double kDefaultTailTol = 1e-12;

struct TruncationOverflow : std::runtime_error {
    double r;
    double tail_tol;
    int cap;
    TruncationOverflow(double r_, double tail_tol_, int cap_);
};

// Smallest even Fock cutoff n_max with neglected mass sum_{2n > n_max}
// |c_2n|^2 < tail_tol. Throws TruncationOverflow past cap.
int choose_truncation(double r, double tail_tol = kDefaultTailTol,
                      int cap = kTruncationCap);

struct CoefficientTable {
    double r = 0.0;
    double theta = 0.0;
    int n_max = 0;  // highest retained Fock index (even)
    std::vector<std::complex<double>> amps;
    double tail_mass = 0.0;  // 1 - sum |c_2n|^2 over retained terms
};

// r >= 0, n_max even and >= 0.
CoefficientTable squeeze_coefficients(double r, double theta, int n_max);

// choose_truncation + squeeze_coefficients.
CoefficientTable make_table(double r, double theta = 0.0,
                            double tail_tol = kDefaultTailTol);

struct OccupationMoments {
    double mean;      // sum 2n |c_2n|^2      = sinh^2 r
    double second;    // sum (2n)^2 |c_2n|^2  = 3 nbar^2 + 2 nbar
    double variance;  // second - mean^2      = 2 (nbar^2 + nbar)
};

OccupationMoments occupation_moments(const CoefficientTable& t);

}  // namespace quench
