#pragma once

#include <complex>
#include <vector>

#include "quench/squeezed_state.hpp"

// Post-quench coherence dynamics of the conditioned mode. The qubit-up
// evolution of the down-branch vacuum reduces to a single phase per retained
// Fock pair, so every trace below is a finite cosine/rotor sum over the
// coefficient table.

namespace quench {

// sum_n |c_2n|^2 exp(-i 2n omega_up t); period pi/omega_up, |value| <= 1.
std::complex<double> loschmidt_overlap(const CoefficientTable& t,
                                       double omega_up, double time_ns);

struct CoherenceTrace {
    double omega_up = 0.0;  // rad/ns
    std::vector<double> times;
    std::vector<std::complex<double>> overlaps;
    std::vector<double> sigma_x;  // Re overlap
    // arccos(|overlap| / retained mass), clamped into [0, pi/2]. The mass
    // normalization makes this the angle between the normalized truncated
    // states, so it vanishes identically at t = 0.
    std::vector<double> bures;
};

// Uniform grid, endpoints included; points >= 2.
CoherenceTrace sigma_x_trace(const CoefficientTable& t, double omega_up,
                             double t_min, double t_max, int points);

// Quasistatic Gaussian qubit detuning noise with variance 2/T2star^2
// multiplies the overlap by exp(-(t/T2star)^2).
double dephased_sigma_x(const CoefficientTable& t, double omega_up,
                        double time_ns, double t2star_ns);

// Quantum Fisher information of the frequency quench, 8 w^2 (nbar^2 + nbar).
double quantum_fisher(double omega_up, double n_bar);

// Same quantity as 4 w^2 Var(N) evaluated from the table.
double variance_crosscheck(const CoefficientTable& t, double omega_up);

// min over the trace of t sqrt(F_Q)/2 - Theta(t); the Bures angle never
// outruns the quantum speed limit, so a healthy trace stays >= -1e-8.
double qsl_margin(const CoherenceTrace& tr, double f_q);

}  // namespace quench
