#include "quench/adaptive_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quench/inference.hpp"
#include "quench/rng.hpp"
#include "quench/squeezed_state.hpp"

namespace quench {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kGolden = 0.6180339887498949;
constexpr double kCertThreshold = 4.0;  // G^2 for one free parameter

double clamp_prob(double p) {
    return std::min(1.0 - kProbFloor, std::max(kProbFloor, p));
}

// Binomial log likelihood of the whole scan at trial frequency omega.
double scan_loglik(const CoefficientTable& table,
                   const std::vector<double>& times,
                   const std::vector<int>& k, int shots_per_point,
                   double omega) {
    double ll = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j) {
        const double p = clamp_prob(success_probability(table,
                                                        omega * times[j]));
        ll += k[j] * std::log(p) +
              (shots_per_point - k[j]) * std::log1p(-p);
    }
    return ll;
}

}  // namespace

AdaptiveReport adaptive_search(const std::vector<double>& schedule,
                               double true_omega_up, int shots_per_stage,
                               int grid_points, int m_index, double prior_frac,
                               double tail_tol, std::uint64_t seed) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double t_star = m_index * kPi / true_omega_up;
    double t_lo = t_star * (1.0 - prior_frac);
    double t_hi = t_star * (1.0 + prior_frac);

    AdaptiveReport report;
    report.m_index = m_index;
    report.omega_hat = nan;
    report.sigma_omega = nan;

    for (std::size_t s = 0; s < schedule.size(); ++s) {
        const auto table = make_table(schedule[s], 0.0, tail_tol);
        const int points = grid_points;
        const int shots_per_point = shots_per_stage / points;

        std::vector<double> times(points);
        for (int j = 0; j < points; ++j)
            times[j] = t_lo + (t_hi - t_lo) * j / (points - 1);

        const std::uint64_t stage_seed = sub_seed(seed, s);
        std::vector<int> k(points, 0);
        for (int j = 0; j < points; ++j) {
            const double p =
                success_probability(table, true_omega_up * times[j]);
            Xoshiro256ss gen(sub_seed(stage_seed, static_cast<uint64_t>(j)));
            for (int i = 0; i < shots_per_point; ++i)
                if (gen.uniform01() < p) ++k[j];
        }
        report.total_shots +=
            static_cast<long long>(points) * shots_per_point;

        StageReport st;
        st.r = schedule[s];
        st.t_lo_ns = t_lo;
        st.t_hi_ns = t_hi;
        st.grid_points = points;
        st.shots_per_point = shots_per_point;
        int j_peak = 0;
        for (int j = 1; j < points; ++j)
            if (k[j] > k[j_peak]) j_peak = j;
        st.t_peak_ns = times[j_peak];
        st.p_peak = static_cast<double>(k[j_peak]) / shots_per_point;
        st.omega_hat = nan;
        st.sigma_omega = nan;

        // Frequency MLE over the window the time scan covers.
        const double w_lo = m_index * kPi / t_hi;
        const double w_hi = m_index * kPi / t_lo;
        const int n_grid = 512;
        std::vector<double> ll(n_grid);
        int best = 0;
        for (int i = 0; i < n_grid; ++i) {
            const double w = w_lo + (w_hi - w_lo) * i / (n_grid - 1);
            ll[i] = scan_loglik(table, times, k, shots_per_point, w);
            if (ll[i] > ll[best]) best = i;
        }
        const double cell = (w_hi - w_lo) / (n_grid - 1);
        double a = std::max(w_lo, w_lo + (best - 1) * cell);
        double b = std::min(w_hi, w_lo + (best + 1) * cell);
        double x1 = b - kGolden * (b - a);
        double x2 = a + kGolden * (b - a);
        double f1 = scan_loglik(table, times, k, shots_per_point, x1);
        double f2 = scan_loglik(table, times, k, shots_per_point, x2);
        for (int it = 0; it < 60; ++it) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + kGolden * (b - a);
                f2 = scan_loglik(table, times, k, shots_per_point, x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - kGolden * (b - a);
                f1 = scan_loglik(table, times, k, shots_per_point, x1);
            }
        }
        const double omega_hat = 0.5 * (a + b);
        const double ll_max =
            scan_loglik(table, times, k, shots_per_point, omega_hat);

        // Certify against the flat explanation before trusting the peak: a
        // scan whose counts are consistent with one pooled rate has not
        // resolved the recurrence at all.
        long long k_total = 0;
        for (int kj : k) k_total += kj;
        const long long n_total =
            static_cast<long long>(points) * shots_per_point;
        const double p_bar =
            clamp_prob(static_cast<double>(k_total) / n_total);
        const double ll_flat = k_total * std::log(p_bar) +
                               (n_total - k_total) * std::log1p(-p_bar);
        st.g2 = 2.0 * (ll_max - ll_flat);
        st.located = st.g2 > kCertThreshold;

        if (st.located) {
            double info = 0.0;
            for (int j = 0; j < points; ++j)
                info += shots_per_point * times[j] * times[j] *
                        fisher_information(table, omega_hat * times[j]);
            const double sigma = 1.0 / std::sqrt(info);
            st.omega_hat = omega_hat;
            st.sigma_omega = sigma;
            report.localized = true;
            report.omega_hat = omega_hat;
            report.sigma_omega = sigma;

            const double w_lo_next = std::max(w_lo, omega_hat - 5.0 * sigma);
            const double w_hi_next = std::min(w_hi, omega_hat + 5.0 * sigma);
            t_lo = m_index * kPi / w_hi_next;
            t_hi = m_index * kPi / w_lo_next;
        }
        report.stages.push_back(st);
    }
    return report;
}

}  // namespace quench
