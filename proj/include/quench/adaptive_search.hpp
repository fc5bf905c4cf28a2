#pragma once

#include <cstdint>
#include <vector>

// Staged recurrence localization: each stage scans a time window around the
// m-th coherence recurrence with its own squeeze setting, certifies that the
// scan actually resolves a recurrence (likelihood-ratio against a flat
// explanation), and narrows the window for the next stage. The simulation
// holds one hidden eigenfrequency fixed while the schedule dials the
// squeeze strength.

namespace quench {

struct StageReport {
    double r = 0.0;
    double t_lo_ns = 0.0;
    double t_hi_ns = 0.0;
    int grid_points = 0;
    int shots_per_point = 0;
    double t_peak_ns = 0.0;  // grid time with the largest + fraction
    double p_peak = 0.0;
    double g2 = 0.0;  // 2 (max_omega loglik - flat loglik)
    bool located = false;
    double omega_hat = 0.0;    // rad/ns, NaN unless located
    double sigma_omega = 0.0;  // design Cramer-Rao sigma, NaN unless located
};

struct AdaptiveReport {
    int m_index = 1;
    bool localized = false;  // at least one stage located the recurrence
    double omega_hat = 0.0;  // from the last located stage (NaN if none)
    double sigma_omega = 0.0;
    long long total_shots = 0;
    std::vector<StageReport> stages;
};

// schedule: per-stage relative squeeze (intended nondecreasing). The prior
// window spans (1 +- prior_frac) times the true m-th recurrence time; the
// estimator itself never reads true_omega_up afterwards.
AdaptiveReport adaptive_search(const std::vector<double>& schedule,
                               double true_omega_up, int shots_per_stage,
                               int grid_points, int m_index, double prior_frac,
                               double tail_tol, std::uint64_t seed);

}  // namespace quench
