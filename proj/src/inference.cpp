#include "quench/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "quench/rng.hpp"

namespace quench {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// cos(2n phi) and n sin(2n phi) sums in one pass via the angle-addition
// recurrence; well conditioned for the few hundred retained terms.
struct TrigSums {
    double cos_sum = 0.0;    // sum |c|^2 cos(2n phi)
    double n_sin_sum = 0.0;  // sum |c|^2 n sin(2n phi)
};

TrigSums trig_sums(const CoefficientTable& t, double phi) {
    const double c1 = std::cos(2.0 * phi);
    const double s1 = std::sin(2.0 * phi);
    double cn = 1.0, sn = 0.0;  // cos/sin of 2n phi
    TrigSums out;
    for (size_t k = 0; k < t.amps.size(); ++k) {
        const double w = std::norm(t.amps[k]);
        out.cos_sum += w * cn;
        out.n_sin_sum += w * static_cast<double>(k) * sn;
        const double cnext = cn * c1 - sn * s1;
        sn = sn * c1 + cn * s1;
        cn = cnext;
    }
    return out;
}

}  // namespace

double success_probability(const CoefficientTable& t, double phi) {
    return std::clamp(0.5 + 0.5 * trig_sums(t, phi).cos_sum, 0.0, 1.0);
}

double success_probability_derivative(const CoefficientTable& t, double phi) {
    return -trig_sums(t, phi).n_sin_sum;
}

double fisher_information(const CoefficientTable& t, double phi) {
    const double p = success_probability(t, phi);
    const double dp = success_probability_derivative(t, phi);
    if (dp == 0.0 && (p >= 1.0 - kProbFloor || p <= kProbFloor))
        return 0.0;  // deterministic outcome at a stationary phase
    const double pf = std::clamp(p, kProbFloor, 1.0 - kProbFloor);
    return dp * dp * (1.0 / pf + 1.0 / (1.0 - pf));
}

double fisher_asymptote(double n_bar) {
    return 3.0 * n_bar * n_bar + 2.0 * n_bar;
}

double dephased_fisher_peak(double n_bar, double omega_up, double t2star_ns,
                            int m) {
    const double k = kPi / (omega_up * t2star_ns);
    const double km = k * static_cast<double>(m);
    return std::exp(-km * km) * fisher_asymptote(n_bar);
}

FisherProfile fisher_profile(const CoefficientTable& t, double phi_min,
                             double phi_max, int points) {
    if (points < 2)
        throw std::invalid_argument("fisher_profile: points < 2");
    FisherProfile prof;
    prof.r = t.r;
    prof.n_bar = occupation_moments(t).mean;
    prof.phis.reserve(static_cast<size_t>(points));
    prof.values.reserve(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double phi =
            phi_min + (phi_max - phi_min) * i / (points - 1);
        prof.phis.push_back(phi);
        prof.values.push_back(fisher_information(t, phi));
    }
    return prof;
}

int MeasurementRecord::n_plus() const {
    return static_cast<int>(
        std::accumulate(outcomes.begin(), outcomes.end(), 0));
}

MeasurementRecord sample_outcomes(const CoefficientTable& t, double phi_true,
                                  int shots, std::uint64_t seed) {
    if (shots < 1)
        throw std::invalid_argument("sample_outcomes: shots < 1");
    const double p = success_probability(t, phi_true);
    MeasurementRecord rec;
    rec.phi_true = phi_true;
    rec.seed = seed;
    rec.outcomes.resize(static_cast<size_t>(shots));
    Xoshiro256ss rng(seed);
    for (auto& x : rec.outcomes)
        x = rng.uniform01() < p ? 1 : 0;
    return rec;
}

double log_likelihood(double n_plus, double n_minus,
                      const CoefficientTable& t, double phi) {
    const double p = std::clamp(success_probability(t, phi), kProbFloor,
                                1.0 - kProbFloor);
    return n_plus * std::log(p) + n_minus * std::log1p(-p);
}

double log_likelihood(const MeasurementRecord& rec, const CoefficientTable& t,
                      double phi) {
    return log_likelihood(rec.n_plus(), rec.n_minus(), t, phi);
}

DegenerateLikelihood::DegenerateLikelihood()
    : std::runtime_error(
          "likelihood is flat across the search window; the phase is "
          "unidentifiable (r = 0 readout carries no signal)") {}

namespace {

void validate_window(Window w) {
    const double tol = 1e-9;
    if (!(w.lo < w.hi))
        throw std::invalid_argument("mle_estimate: window lo >= hi");
    if (w.hi - w.lo > kPi / 2.0 + tol)
        throw std::invalid_argument(
            "mle_estimate: window longer than half a period");
    // right of a recurrence: [m pi, m pi + pi/2]
    const double m_right = std::floor(w.lo / kPi + tol);
    if (w.hi <= (m_right + 0.5) * kPi + tol) return;
    // left of a recurrence: [m pi - pi/2, m pi]
    const double m_left = std::ceil(w.hi / kPi - tol);
    if (w.lo >= (m_left - 0.5) * kPi - tol) return;
    throw std::invalid_argument(
        "mle_estimate: window must lie inside a half period adjacent to a "
        "recurrence phase m pi");
}

}  // namespace

double mle_estimate(double n_plus, double n_minus, const CoefficientTable& t,
                    Window window, int grid_points, int refine_iters) {
    validate_window(window);
    if (grid_points < 3)
        throw std::invalid_argument("mle_estimate: grid_points < 3");

    const double center = 0.5 * (window.lo + window.hi);
    const double span = window.hi - window.lo;

    auto loglik = [&](double phi) {
        return log_likelihood(n_plus, n_minus, t, phi);
    };

    int best = 0;
    double best_ll = -std::numeric_limits<double>::infinity();
    double min_ll = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_points; ++i) {
        const double phi = window.lo + span * i / (grid_points - 1);
        const double ll = loglik(phi);
        min_ll = std::min(min_ll, ll);
        const bool closer_to_center =
            std::abs(phi - center) <
            std::abs(window.lo + span * best / (grid_points - 1) - center);
        if (ll > best_ll || (ll == best_ll && closer_to_center)) {
            best_ll = ll;
            best = i;
        }
    }
    if (best_ll - min_ll <= 1e-12 * std::max(1.0, std::abs(best_ll)))
        throw DegenerateLikelihood();

    // golden-section ascent on the cell bracketing the grid argmax
    double a = window.lo + span * std::max(best - 1, 0) / (grid_points - 1);
    double b = window.lo +
               span * std::min(best + 1, grid_points - 1) / (grid_points - 1);
    const double gr = 0.6180339887498949;  // (sqrt(5)-1)/2
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = loglik(x1);
    double f2 = loglik(x2);
    for (int it = 0; it < refine_iters; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = loglik(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = loglik(x1);
        }
    }
    return 0.5 * (a + b);
}

double mle_estimate(const MeasurementRecord& rec, const CoefficientTable& t,
                    Window window, int grid_points, int refine_iters) {
    return mle_estimate(static_cast<double>(rec.n_plus()),
                        static_cast<double>(rec.n_minus()), t, window,
                        grid_points, refine_iters);
}

EstimatorStudy estimator_study(const CoefficientTable& t, double phi_true,
                               int shots, int batches, Window window,
                               std::uint64_t seed, int grid_points,
                               int refine_iters) {
    if (batches < 2)
        throw std::invalid_argument("estimator_study: batches < 2");
    EstimatorStudy st;
    st.phi_true = phi_true;
    st.shots = shots;
    st.batches = batches;
    st.window = window;
    st.estimates.reserve(static_cast<size_t>(batches));
    for (int b = 0; b < batches; ++b) {
        const MeasurementRecord rec = sample_outcomes(
            t, phi_true, shots, sub_seed(seed, static_cast<std::uint64_t>(b)));
        st.estimates.push_back(
            mle_estimate(rec, t, window, grid_points, refine_iters));
    }

    const double n = static_cast<double>(batches);
    st.mean = std::accumulate(st.estimates.begin(), st.estimates.end(), 0.0) / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double e : st.estimates) {
        const double d = e - st.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    st.variance = m2 / (n - 1.0);
    m2 /= n;
    m3 /= n;
    m4 /= n;
    st.bias = st.mean - phi_true;
    st.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    st.excess_kurtosis = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
    st.crlb = 1.0 / (shots * fisher_information(t, phi_true));
    st.variance_ratio = st.variance / st.crlb;
    return st;
}

}  // namespace quench
