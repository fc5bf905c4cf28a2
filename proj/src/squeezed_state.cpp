#include "quench/squeezed_state.hpp"

#include <cmath>
#include <cstdio>

namespace quench {

namespace {

std::string overflow_message(double r, double tail_tol, int cap) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "squeezed-state tail does not reach tail_tol %g within "
                  "Fock cap %d at r = %g",
                  tail_tol, cap, r);
    return buf;
}

}  // namespace

TruncationOverflow::TruncationOverflow(double r_, double tail_tol_, int cap_)
    : std::runtime_error(overflow_message(r_, tail_tol_, cap_)),
      r(r_),
      tail_tol(tail_tol_),
      cap(cap_) {}

int choose_truncation(double r, double tail_tol, int cap) {
    if (!(r >= 0.0)) throw std::invalid_argument("choose_truncation: r < 0");
    if (!(tail_tol > 0.0 && tail_tol < 1.0))
        throw std::invalid_argument("choose_truncation: tail_tol outside (0,1)");
    // |c_{2n+2}|^2 = |c_2n|^2 tanh^2(r) (2n+1)/(2n+2)
    const double t2 = std::tanh(r) * std::tanh(r);
    double mass = 1.0 / std::cosh(r);
    double cum = 0.0;
    for (int n = 0;; ++n) {
        cum += mass;
        if (cum > 1.0 - tail_tol) return 2 * n;
        if (2 * (n + 1) > cap) throw TruncationOverflow(r, tail_tol, cap);
        mass *= t2 * (2.0 * n + 1.0) / (2.0 * n + 2.0);
    }
}

CoefficientTable squeeze_coefficients(double r, double theta, int n_max) {
    if (!(r >= 0.0))
        throw std::invalid_argument("squeeze_coefficients: r < 0");
    if (n_max < 0 || n_max % 2 != 0)
        throw std::invalid_argument("squeeze_coefficients: n_max must be even and >= 0");

    CoefficientTable t;
    t.r = r;
    t.theta = theta;
    t.n_max = n_max;
    t.amps.resize(static_cast<size_t>(n_max / 2) + 1);

    const std::complex<double> step =
        -std::polar(std::tanh(r), theta);  // -e^{i theta} tanh r
    std::complex<double> c = 1.0 / std::sqrt(std::cosh(r));
    double sum = 0.0;
    for (int n = 0; 2 * n <= n_max; ++n) {
        t.amps[static_cast<size_t>(n)] = c;
        sum += std::norm(c);
        c *= step * std::sqrt((2.0 * n + 1.0) * (2.0 * n + 2.0)) /
             (2.0 * n + 2.0);
    }
    t.tail_mass = 1.0 - sum;
    return t;
}

CoefficientTable make_table(double r, double theta, double tail_tol) {
    return squeeze_coefficients(r, theta, choose_truncation(r, tail_tol));
}

OccupationMoments occupation_moments(const CoefficientTable& t) {
    OccupationMoments m{};
    for (size_t k = 0; k < t.amps.size(); ++k) {
        const double w = std::norm(t.amps[k]);
        const double fock = 2.0 * static_cast<double>(k);
        m.mean += fock * w;
        m.second += fock * fock * w;
    }
    m.variance = m.second - m.mean * m.mean;
    return m;
}

}  // namespace quench
