#include "quench/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace quench {

std::complex<double> loschmidt_overlap(const CoefficientTable& t,
                                       double omega_up, double time_ns) {
    // rotor recurrence over e^{-i 2n w t}; n_max is a few hundred at most,
    // so the accumulated phase error stays near machine precision
    const std::complex<double> step =
        std::polar(1.0, -2.0 * omega_up * time_ns);
    std::complex<double> rotor = 1.0;
    std::complex<double> sum = 0.0;
    for (const auto& c : t.amps) {
        sum += std::norm(c) * rotor;
        rotor *= step;
    }
    return sum;
}

namespace {

// Sum of |c_2n|^2 over the retained amplitudes, accumulated in the same
// order as the overlap sum so the t = 0 ratio is exactly 1.
double retained_mass(const CoefficientTable& t) {
    double s = 0.0;
    for (const auto& c : t.amps) s += std::norm(c);
    return s;
}

// Angle between the normalized truncated states. Dividing by the retained
// mass matters: acos amplifies a 1e-12 norm deficit into a 1e-6 angle.
double bures_angle(const std::complex<double>& overlap, double mass) {
    return std::acos(std::clamp(std::abs(overlap) / mass, 0.0, 1.0));
}

}  // namespace

CoherenceTrace sigma_x_trace(const CoefficientTable& t, double omega_up,
                             double t_min, double t_max, int points) {
    if (points < 2)
        throw std::invalid_argument("sigma_x_trace: points < 2");
    CoherenceTrace tr;
    tr.omega_up = omega_up;
    tr.times.reserve(static_cast<size_t>(points));
    tr.overlaps.reserve(static_cast<size_t>(points));
    tr.sigma_x.reserve(static_cast<size_t>(points));
    tr.bures.reserve(static_cast<size_t>(points));
    const double mass = retained_mass(t);
    for (int i = 0; i < points; ++i) {
        const double time = t_min + (t_max - t_min) * i / (points - 1);
        const std::complex<double> ov = loschmidt_overlap(t, omega_up, time);
        tr.times.push_back(time);
        tr.overlaps.push_back(ov);
        tr.sigma_x.push_back(ov.real());
        tr.bures.push_back(bures_angle(ov, mass));
    }
    return tr;
}

double dephased_sigma_x(const CoefficientTable& t, double omega_up,
                        double time_ns, double t2star_ns) {
    const double x = time_ns / t2star_ns;
    return std::exp(-x * x) * loschmidt_overlap(t, omega_up, time_ns).real();
}

double quantum_fisher(double omega_up, double n_bar) {
    return 8.0 * omega_up * omega_up * (n_bar * n_bar + n_bar);
}

double variance_crosscheck(const CoefficientTable& t, double omega_up) {
    return 4.0 * omega_up * omega_up * occupation_moments(t).variance;
}

double qsl_margin(const CoherenceTrace& tr, double f_q) {
    const double rate = 0.5 * std::sqrt(f_q);
    double margin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < tr.times.size(); ++i)
        margin = std::min(margin, tr.times[i] * rate - tr.bures[i]);
    return margin;
}

}  // namespace quench
