#include "quench/core_model.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace quench {

namespace {

std::string stability_message(int sigma, double margin) {
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "unstable qubit-%s branch: omega_eff - 2*Omega = %g rad/ns "
                  "(must be positive)",
                  sigma > 0 ? "up" : "down", margin);
    return buf;
}

}  // namespace

double omega0_from_field(double gap_ghz, double field_t,
                         double gyro_ghz_per_t) {
    return ghz_to_radns(gap_ghz + gyro_ghz_per_t * field_t);
}

SystemParams params_from_ghz(double omega0_ghz, double omega_ghz,
                             double chi_ghz) {
    return {ghz_to_radns(omega0_ghz), ghz_to_radns(omega_ghz),
            ghz_to_radns(chi_ghz)};
}

StabilityError::StabilityError(int sigma_, double margin_)
    : std::runtime_error(stability_message(sigma_, margin_)),
      sigma(sigma_),
      margin(margin_) {}

void check_stability(const SystemParams& p) {
    // omega_eff^2 > 4 Omega^2 with omega_eff > 0 is exactly
    // omega_eff - 2|Omega| > 0; the smaller margin binds first.
    const double margin_up = p.omega0 + p.chi - 2.0 * std::abs(p.omega);
    const double margin_down = p.omega0 - p.chi - 2.0 * std::abs(p.omega);
    if (margin_down <= margin_up) {
        if (margin_down <= 0.0) throw StabilityError(-1, margin_down);
    } else if (margin_up <= 0.0) {
        throw StabilityError(+1, margin_up);
    }
}

namespace {

// Per-branch Bogoliubov angle and dressed frequency; omega_eff > 2|Omega|
// guaranteed by check_stability.
void diagonalize_branch(double omega_eff, double omega, double* w,
                        double* r) {
    *w = std::sqrt((omega_eff - 2.0 * omega) * (omega_eff + 2.0 * omega));
    *r = 0.5 * std::atanh(2.0 * omega / omega_eff);
}

}  // namespace

DerivedQuantities derive_quantities(const SystemParams& p) {
    check_stability(p);
    DerivedQuantities q{};
    q.omega_eff_up = p.omega0 + p.chi;
    q.omega_eff_down = p.omega0 - p.chi;
    diagonalize_branch(q.omega_eff_up, p.omega, &q.omega_up, &q.r_up);
    diagonalize_branch(q.omega_eff_down, p.omega, &q.omega_down, &q.r_down);
    q.theta_up = kTwoPi / 2.0;
    q.theta_down = 0.0;
    q.r = q.r_down - q.r_up;
    const double s = std::sinh(q.r);
    q.n_bar = s * s;
    return q;
}

ValidityReport nonlinearity_validity(const DerivedQuantities& q,
                                     double ns_product) {
    const double su = std::sinh(q.r_up);
    const double sd = std::sinh(q.r_down);
    ValidityReport rep{};
    rep.occupation = std::max(su * su, sd * sd);
    rep.ratio = rep.occupation / ns_product;
    rep.ok = rep.ratio < 0.01;
    return rep;
}

std::vector<FieldSweepRow> sweep_field(double gap_ghz, double omega_ghz,
                                       double chi_ghz, double field_min_t,
                                       double field_max_t, int points,
                                       double gyro_ghz_per_t) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<FieldSweepRow> rows;
    rows.reserve(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double h =
            field_min_t + (field_max_t - field_min_t) * i / (points - 1);
        SystemParams p =
            params_from_ghz(0.0, omega_ghz, chi_ghz);
        p.omega0 = omega0_from_field(gap_ghz, h, gyro_ghz_per_t);
        FieldSweepRow row{h, true, nan, nan, nan};
        try {
            const DerivedQuantities q = derive_quantities(p);
            row.r = q.r;
            row.n_bar = q.n_bar;
            row.omega_up = q.omega_up;
        } catch (const StabilityError&) {
            row.stable = false;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace quench
