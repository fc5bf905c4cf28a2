#include "quench/runner.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "quench/adaptive_search.hpp"
#include "quench/core_model.hpp"
#include "quench/dynamics.hpp"
#include "quench/emit.hpp"
#include "quench/inference.hpp"
#include "quench/squeezed_state.hpp"

namespace quench {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

using json = nlohmann::ordered_json;

std::optional<SystemParams> resolve_params(const RunConfig& c) {
    const bool physical =
        (c.omega0_ghz || (c.gap_ghz && c.field_t)) && c.omega_ghz && c.chi_ghz;
    if (!physical) return std::nullopt;
    const double omega0_ghz =
        c.omega0_ghz ? *c.omega0_ghz
                     : omega0_from_field(*c.gap_ghz, *c.field_t,
                                         c.gyro_ghz_per_t);
    return params_from_ghz(omega0_ghz, *c.omega_ghz, *c.chi_ghz);
}

struct ResolvedState {
    double r;
    double omega_up;  // rad/ns
};

// Direct-r runs pin the time axis through omega-up-ghz, defaulting to
// 1 rad/ns so time and phase coincide numerically.
std::vector<ResolvedState> resolve_states(const RunConfig& c) {
    if (const auto p = resolve_params(c)) {
        const auto q = derive_quantities(*p);
        return {{q.r, q.omega_up}};
    }
    const double w =
        c.omega_up_ghz ? ghz_to_radns(*c.omega_up_ghz) : 1.0;
    std::vector<ResolvedState> out;
    for (double r : c.r_values) out.push_back({r, w});
    return out;
}

json run_meta(const RunConfig& c) {
    return json::parse(config_to_json_text(c));
}

std::string emit(const RunConfig& c, const TableDoc& doc,
                 const json& extra = json::object()) {
    return c.format == OutputFormat::csv ? to_csv(doc) : to_json(doc, extra);
}

std::string run_params(const RunConfig& c) {
    const auto p = resolve_params(c);
    const auto q = derive_quantities(*p);
    TableDoc doc;
    doc.meta = run_meta(c);
    doc.columns = {"omega_eff_up_radns", "omega_eff_down_radns",
                   "omega_up_radns",     "omega_down_radns",
                   "omega_up_ghz",       "omega_down_ghz",
                   "r_up",               "r_down",
                   "r",                  "n_bar"};
    json row;
    row["omega_eff_up_radns"] = q.omega_eff_up;
    row["omega_eff_down_radns"] = q.omega_eff_down;
    row["omega_up_radns"] = q.omega_up;
    row["omega_down_radns"] = q.omega_down;
    row["omega_up_ghz"] = radns_to_ghz(q.omega_up);
    row["omega_down_ghz"] = radns_to_ghz(q.omega_down);
    row["r_up"] = q.r_up;
    row["r_down"] = q.r_down;
    row["r"] = q.r;
    row["n_bar"] = q.n_bar;
    if (c.ns_product) {
        const auto v = nonlinearity_validity(q, *c.ns_product);
        doc.columns.insert(doc.columns.end(),
                           {"occupation", "validity_ratio", "validity_ok"});
        row["occupation"] = v.occupation;
        row["validity_ratio"] = v.ratio;
        row["validity_ok"] = v.ok;
    }
    doc.rows.push_back(std::move(row));
    return emit(c, doc);
}

std::string run_sweep(const RunConfig& c) {
    const double lo = c.field_min_t.value_or(-0.196);
    const double hi = c.field_max_t.value_or(0.0);
    const auto rows = sweep_field(*c.gap_ghz, *c.omega_ghz, *c.chi_ghz, lo, hi,
                                  c.steps, c.gyro_ghz_per_t);
    TableDoc doc;
    doc.meta = run_meta(c);
    doc.columns = {"field_t", "stable", "r", "n_bar", "omega_up_radns"};
    for (const auto& s : rows) {
        json row;
        row["field_t"] = s.field_t;
        row["stable"] = s.stable;
        row["r"] = s.r;
        row["n_bar"] = s.n_bar;
        row["omega_up_radns"] = s.omega_up;
        doc.rows.push_back(std::move(row));
    }
    return emit(c, doc);
}

std::string run_coherence(const RunConfig& c) {
    TableDoc doc;
    doc.meta = run_meta(c);
    doc.columns = {"r", "time_ns", "phi", "sigma_x", "p_plus"};
    if (c.t2star_ns) doc.columns.push_back("sigma_x_dephased");
    for (const auto& st : resolve_states(c)) {
        const auto table = make_table(st.r, 0.0, c.tail_tol);
        const auto tr = sigma_x_trace(table, st.omega_up,
                                      c.phi_min / st.omega_up,
                                      c.phi_max / st.omega_up, c.steps);
        for (std::size_t i = 0; i < tr.times.size(); ++i) {
            json row;
            row["r"] = st.r;
            row["time_ns"] = tr.times[i];
            row["phi"] = st.omega_up * tr.times[i];
            row["sigma_x"] = tr.sigma_x[i];
            row["p_plus"] = 0.5 * (1.0 + tr.sigma_x[i]);
            if (c.t2star_ns)
                row["sigma_x_dephased"] = dephased_sigma_x(
                    table, st.omega_up, tr.times[i], *c.t2star_ns);
            doc.rows.push_back(std::move(row));
        }
    }
    return emit(c, doc);
}

std::string run_fisher(const RunConfig& c) {
    TableDoc doc;
    doc.meta = run_meta(c);
    doc.columns = {"r", "phi", "fisher"};
    for (const auto& st : resolve_states(c)) {
        const auto table = make_table(st.r, 0.0, c.tail_tol);
        const auto prof =
            fisher_profile(table, c.phi_min, c.phi_max, c.steps);
        for (std::size_t i = 0; i < prof.phis.size(); ++i) {
            json row;
            row["r"] = st.r;
            row["phi"] = prof.phis[i];
            row["fisher"] = prof.values[i];
            doc.rows.push_back(std::move(row));
        }
    }
    return emit(c, doc);
}

std::string run_qsl(const RunConfig& c) {
    const auto states = resolve_states(c);
    const auto& st = states.front();
    const auto table = make_table(st.r, 0.0, c.tail_tol);
    const auto moments = occupation_moments(table);
    const double f_q = quantum_fisher(st.omega_up, moments.mean);
    const auto tr = sigma_x_trace(table, st.omega_up, 0.0,
                                  kPi / st.omega_up, c.steps);
    TableDoc doc;
    doc.meta = run_meta(c);
    doc.columns = {"r", "time_ns", "theta_bures", "qsl_bound", "margin"};
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        const double bound = tr.times[i] * std::sqrt(f_q) / 2.0;
        json row;
        row["r"] = st.r;
        row["time_ns"] = tr.times[i];
        row["theta_bures"] = tr.bures[i];
        row["qsl_bound"] = bound;
        row["margin"] = bound - tr.bures[i];
        doc.rows.push_back(std::move(row));
    }
    doc.meta["f_q"] = f_q;
    doc.meta["qsl_min_margin"] = qsl_margin(tr, f_q);
    return emit(c, doc);
}

Window default_window(double phi_true) {
    const double anchor = std::round(phi_true / kPi) * kPi;
    if (phi_true >= anchor) return {anchor, anchor + kPi / 2.0};
    return {anchor - kPi / 2.0, anchor};
}

std::string run_mle(const RunConfig& c) {
    const auto states = resolve_states(c);
    const auto& st = states.front();
    const auto table = make_table(st.r, 0.0, c.tail_tol);
    const Window w = c.window_lo ? Window{*c.window_lo, *c.window_hi}
                                 : default_window(*c.phi_true);
    const auto study =
        estimator_study(table, *c.phi_true, c.shots, c.batches, w, c.seed,
                        c.grid_points, c.refine_iters);
    TableDoc doc;
    doc.meta = run_meta(c);
    doc.columns = {"batch", "phi_hat"};
    for (int b = 0; b < study.batches; ++b) {
        json row;
        row["batch"] = b;
        row["phi_hat"] = study.estimates[b];
        doc.rows.push_back(std::move(row));
    }
    doc.meta["window_lo"] = w.lo;
    doc.meta["window_hi"] = w.hi;
    doc.meta["mean"] = study.mean;
    doc.meta["variance"] = study.variance;
    doc.meta["bias"] = study.bias;
    doc.meta["skewness"] = study.skewness;
    doc.meta["excess_kurtosis"] = study.excess_kurtosis;
    doc.meta["crlb"] = study.crlb;
    doc.meta["variance_ratio"] = study.variance_ratio;
    return emit(c, doc);
}

std::string run_adaptive(const RunConfig& c) {
    const double true_w = ghz_to_radns(*c.true_omega_up_ghz);
    const auto rep =
        adaptive_search(c.r_values, true_w, c.shots, c.steps, c.m_index,
                        c.prior_frac, c.tail_tol, c.seed);
    TableDoc doc;
    doc.meta = run_meta(c);
    doc.columns = {"stage",           "r",
                   "t_lo_ns",         "t_hi_ns",
                   "grid_points",     "shots_per_point",
                   "t_peak_ns",       "p_peak",
                   "g2",              "located",
                   "omega_hat_radns", "sigma_omega_radns"};
    for (std::size_t s = 0; s < rep.stages.size(); ++s) {
        const auto& st = rep.stages[s];
        json row;
        row["stage"] = static_cast<int>(s);
        row["r"] = st.r;
        row["t_lo_ns"] = st.t_lo_ns;
        row["t_hi_ns"] = st.t_hi_ns;
        row["grid_points"] = st.grid_points;
        row["shots_per_point"] = st.shots_per_point;
        row["t_peak_ns"] = st.t_peak_ns;
        row["p_peak"] = st.p_peak;
        row["g2"] = st.g2;
        row["located"] = st.located;
        row["omega_hat_radns"] = st.omega_hat;
        row["sigma_omega_radns"] = st.sigma_omega;
        doc.rows.push_back(std::move(row));
    }
    doc.meta["localized"] = rep.localized;
    doc.meta["total_shots"] = rep.total_shots;
    if (rep.localized) {
        doc.meta["omega_hat_radns"] = rep.omega_hat;
        doc.meta["omega_hat_ghz"] = radns_to_ghz(rep.omega_hat);
        doc.meta["sigma_omega_radns"] = rep.sigma_omega;
        doc.meta["sigma_omega_ghz"] = radns_to_ghz(rep.sigma_omega);
    }
    return emit(c, doc);
}

}  // namespace

std::string run(const RunConfig& c) {
    validate(c);
    switch (c.mode) {
        case Mode::params:
            return run_params(c);
        case Mode::sweep_field:
            return run_sweep(c);
        case Mode::coherence:
            return run_coherence(c);
        case Mode::fisher:
            return run_fisher(c);
        case Mode::qsl_check:
            return run_qsl(c);
        case Mode::mle_sim:
            return run_mle(c);
        case Mode::adaptive_search:
            return run_adaptive(c);
    }
    throw std::logic_error("unreachable mode");
}

}  // namespace quench
