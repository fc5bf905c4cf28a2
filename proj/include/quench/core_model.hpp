#pragma once

#include <stdexcept>
#include <string>
#include <vector>

// Bogoliubov structure of the qubit-conditioned Kittel mode.
//
// Angular frequencies are rad/ns throughout the library; user-facing
// spectroscopy values are GHz (cycles/ns) and convert via 2*pi. Times are ns.

namespace quench {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kDefaultGyroGHzPerT = 28.0;

inline double ghz_to_radns(double f_ghz) { return kTwoPi * f_ghz; }
inline double radns_to_ghz(double w_radns) { return w_radns / kTwoPi; }

// Mode frequency from the anisotropy gap and the applied field along z:
// omega0/2pi = gap_ghz + gyro_ghz_per_t * field_t. Negative fields are
// allowed; they pull the mode toward the pair-instability boundary.
double omega0_from_field(double gap_ghz, double field_t,
                         double gyro_ghz_per_t = kDefaultGyroGHzPerT);

struct SystemParams {
    double omega0;  // bare mode frequency, rad/ns
    double omega;   // pair-creation drive strength Omega, rad/ns
    double chi;     // dispersive qubit shift, rad/ns
};

SystemParams params_from_ghz(double omega0_ghz, double omega_ghz,
                             double chi_ghz);

// Thrown when a conditional branch has omega_eff^2 <= 4 Omega^2 (margin is
// omega_eff - 2 Omega in rad/ns) or omega_eff <= 0.
struct StabilityError : std::runtime_error {
    int sigma;      // +1 qubit-up branch, -1 qubit-down branch
    double margin;  // rad/ns, <= 0 when thrown
    StabilityError(int sigma_, double margin_);
};

// Throws StabilityError for the branch with the smaller margin.
void check_stability(const SystemParams& p);

struct DerivedQuantities {
    double omega_eff_up;    // omega0 + chi
    double omega_eff_down;  // omega0 - chi
    double omega_up;        // sqrt(omega_eff_up^2 - 4 Omega^2)
    double omega_down;
    double r_up;            // (1/2) artanh(2 Omega / omega_eff_up)
    double r_down;
    double theta_up;        // pi
    double theta_down;      // 0
    double r;               // relative squeeze r_down - r_up
    double n_bar;           // sinh^2 r
};

// check_stability followed by the Bogoliubov diagonalization of each branch.
DerivedQuantities derive_quantities(const SystemParams& p);

// Holstein-Primakoff linearization holds while the squeezed occupation stays
// far below the total spin; ratio = max(sinh^2 r_sigma) / ns_product.
struct ValidityReport {
    double occupation;  // max over branches of sinh^2 r_sigma
    double ratio;
    bool ok;            // ratio < 0.01
};

ValidityReport nonlinearity_validity(const DerivedQuantities& q,
                                     double ns_product);

struct FieldSweepRow {
    double field_t;
    bool stable;
    double r;         // NaN when unstable
    double n_bar;     // NaN when unstable
    double omega_up;  // rad/ns, NaN when unstable
};

// Field sweep of the relative squeeze; unstable fields are flagged, not
// fatal. points >= 2, endpoints included.
std::vector<FieldSweepRow> sweep_field(
    double gap_ghz, double omega_ghz, double chi_ghz, double field_min_t,
    double field_max_t, int points,
    double gyro_ghz_per_t = kDefaultGyroGHzPerT);

}  // namespace quench
