#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "quench/squeezed_state.hpp"

// Qubit readout statistics and frequency estimation. The accumulated phase
// phi = omega_up * t is the estimated parameter; dividing an estimate by a
// known evolution time converts it to a frequency, and that division is left
// to the caller.

namespace quench {

inline constexpr double kProbFloor = 1e-15;

// p(+|phi) = 1/2 + (1/2) sum_n |c_2n|^2 cos(2n phi), clamped to [0, 1].
double success_probability(const CoefficientTable& t, double phi);

// dp/dphi = -sum_n |c_2n|^2 n sin(2n phi).
double success_probability_derivative(const CoefficientTable& t, double phi);

// Two-outcome Fisher information (dp/dphi)^2 [1/p + 1/(1-p)], with p and
// 1-p floored at kProbFloor. A stationary phi with a deterministic outcome
// carries no information, so dp = 0 with p at either floor returns exactly 0;
// the phi -> m pi limit elsewhere is the full second moment 3 nbar^2 + 2 nbar.
double fisher_information(const CoefficientTable& t, double phi);

// Recurrence-plateau value 3 nbar^2 + 2 nbar; quadratic in nbar, hence the
// Heisenberg scaling of the protocol.
double fisher_asymptote(double n_bar);

// Plateau of recurrence m under Gaussian dephasing:
// exp(-(K m)^2) (3 nbar^2 + 2 nbar) with K = pi / (omega_up T2star).
double dephased_fisher_peak(double n_bar, double omega_up, double t2star_ns,
                            int m);

struct FisherProfile {
    double r = 0.0;
    double n_bar = 0.0;
    std::vector<double> phis;
    std::vector<double> values;
    // set when a dephasing time annotates the profile
    std::optional<double> k_damping;
    std::optional<int> m_index;
};

FisherProfile fisher_profile(const CoefficientTable& t, double phi_min,
                             double phi_max, int points);

struct MeasurementRecord {
    double phi_true = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> outcomes;  // 1 = '+', 0 = '-'

    int n_plus() const;
    int n_minus() const { return static_cast<int>(outcomes.size()) - n_plus(); }
};

// shots Bernoulli draws at p(+|phi_true); outcome i is '+' iff u_i < p.
MeasurementRecord sample_outcomes(const CoefficientTable& t, double phi_true,
                                  int shots, std::uint64_t seed);

// Binomial log likelihood; only the counts matter. The real-valued overload
// admits expected counts for noiseless checks.
double log_likelihood(double n_plus, double n_minus, const CoefficientTable& t,
                      double phi);
double log_likelihood(const MeasurementRecord& rec, const CoefficientTable& t,
                      double phi);

// Thrown when the likelihood is flat across the search window (r = 0, or any
// table whose probability does not vary), leaving phi unidentifiable.
struct DegenerateLikelihood : std::runtime_error {
    DegenerateLikelihood();
};

struct Window {
    double lo = 0.0;
    double hi = 0.0;
};

// Maximum-likelihood phase estimate. The window must sit inside a half
// period adjacent to a known recurrence: [m pi, m pi + pi/2] or
// [m pi - pi/2, m pi] for integer m, where p is identifiable. Coarse grid
// argmax (ties resolved toward the window center), then golden-section
// refinement of the bracketing cell. The counts overload admits fractional
// expected counts for noiseless consistency checks.
double mle_estimate(double n_plus, double n_minus, const CoefficientTable& t,
                    Window window, int grid_points = 512,
                    int refine_iters = 60);
double mle_estimate(const MeasurementRecord& rec, const CoefficientTable& t,
                    Window window, int grid_points = 512,
                    int refine_iters = 60);

struct EstimatorStudy {
    double phi_true = 0.0;
    int shots = 0;
    int batches = 0;
    Window window;
    std::vector<double> estimates;
    double mean = 0.0;
    double variance = 0.0;  // unbiased sample variance
    double bias = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double crlb = 0.0;  // 1 / (shots * F_C(phi_true))
    double variance_ratio = 0.0;
};

// batches independent records (batch b uses sub_seed(seed, b)), one MLE each.
EstimatorStudy estimator_study(const CoefficientTable& t, double phi_true,
                               int shots, int batches, Window window,
                               std::uint64_t seed, int grid_points = 512,
                               int refine_iters = 60);

}  // namespace quench
