#pragma once

#include <complex>
#include <vector>

// Test-only brute-force reference: amplitudes of exp[(z* a^2 - z a'^2)/2]|0>
// computed as a matrix exponential on the even-parity Fock block |2k>,
// k < dim. The generator never mixes parities, so restricting to the even
// block is exact, and on that block it is tridiagonal:
//   A[k-1][k] = +(z*/2) sqrt(2k(2k-1)),  A[k][k-1] = -(z/2) sqrt(2k(2k-1)).
// exp(A)|e0> is evaluated by scaling (2^s substeps with ||A||/2^s <= 1/2)
// and a machine-precision Taylor series per substep; A is anti-Hermitian,
// so the propagation is unitary and the error does not accumulate.

namespace quench::testing {

std::vector<std::complex<double>> oracle_coefficients(double r, double theta,
                                                      int dim);

}  // namespace quench::testing
