#include "quench/run_config.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace quench {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

const char* kModeNames[] = {"params",  "sweep-field", "coherence", "fisher",
                            "mle-sim", "qsl-check",   "adaptive-search"};

}  // namespace

const char* to_string(Mode m) { return kModeNames[static_cast<int>(m)]; }

Mode mode_from_string(const std::string& s) {
    for (int i = 0; i < 7; ++i)
        if (s == kModeNames[i]) return static_cast<Mode>(i);
    throw ConfigError({"mode: unknown mode '" + s +
                       "' (expected params, sweep-field, coherence, fisher, "
                       "mle-sim, qsl-check, adaptive-search)"});
}

ConfigError::ConfigError(std::vector<std::string> v)
    : std::runtime_error([&v] {
          std::ostringstream os;
          os << "invalid configuration:";
          for (const auto& s : v) os << "\n  - " << s;
          return os.str();
      }()),
      violations(std::move(v)) {}

namespace {

bool window_fits_half_period(double lo, double hi) {
    const double tol = 1e-9;
    if (!(lo < hi) || hi - lo > kPi / 2.0 + tol) return false;
    const double m_right = std::floor(lo / kPi + tol);
    if (hi <= (m_right + 0.5) * kPi + tol) return true;
    const double m_left = std::ceil(hi / kPi - tol);
    return lo >= (m_left - 0.5) * kPi - tol;
}

}  // namespace

void validate(const RunConfig& c) {
    std::vector<std::string> v;

    const bool has_field_map = c.gap_ghz.has_value() || c.field_t.has_value();
    const bool physical_complete =
        (c.omega0_ghz.has_value() ||
         (c.gap_ghz.has_value() && c.field_t.has_value())) &&
        c.omega_ghz.has_value() && c.chi_ghz.has_value();
    const bool any_physical = c.omega0_ghz.has_value() || has_field_map ||
                              c.omega_ghz.has_value() || c.chi_ghz.has_value();
    const bool has_r = !c.r_values.empty();

    if (c.omega0_ghz && has_field_map)
        v.push_back("omega0-ghz: mutually exclusive with gap-ghz/field-t");
    if (c.gap_ghz.has_value() != c.field_t.has_value() &&
        c.mode != Mode::sweep_field)
        v.push_back("gap-ghz and field-t must be given together");
    if (any_physical && !physical_complete && c.mode != Mode::sweep_field)
        v.push_back(
            "physical parameterization needs omega0-ghz (or gap-ghz with "
            "field-t) plus omega-ghz and chi-ghz");
    if (has_r && any_physical)
        v.push_back("r: mutually exclusive with the physical parameters");

    for (double r : c.r_values)
        if (!(r >= 0.0)) {
            v.push_back("r: values must be >= 0");
            break;
        }
    if (!(c.tail_tol > 0.0 && c.tail_tol < 1.0))
        v.push_back("tail-tol: must lie in (0, 1)");
    if (c.steps < 2) v.push_back("steps: must be >= 2");
    if (c.shots < 1) v.push_back("shots: must be >= 1");
    if (c.omega_up_ghz && any_physical)
        v.push_back("omega-up-ghz: only applies to direct-r runs");
    if (c.omega_up_ghz && !(*c.omega_up_ghz > 0.0))
        v.push_back("omega-up-ghz: must be > 0");
    if (c.t2star_ns && !(*c.t2star_ns > 0.0))
        v.push_back("t2star-ns: must be > 0");
    if (c.ns_product && !(*c.ns_product > 0.0))
        v.push_back("ns-product: must be > 0");

    const bool needs_phi_grid = c.mode == Mode::coherence ||
                                c.mode == Mode::fisher;
    if (needs_phi_grid && !(c.phi_min < c.phi_max))
        v.push_back("phi-min/phi-max: need phi_min < phi_max");

    const bool needs_table = c.mode == Mode::coherence ||
                             c.mode == Mode::fisher ||
                             c.mode == Mode::qsl_check ||
                             c.mode == Mode::mle_sim;
    if (needs_table && !has_r && !physical_complete)
        v.push_back(std::string(to_string(c.mode)) +
                    ": provide either r or the physical parameters");
    if ((c.mode == Mode::mle_sim || c.mode == Mode::qsl_check) && has_r &&
        c.r_values.size() != 1)
        v.push_back(std::string(to_string(c.mode)) +
                    ": exactly one r value");

    switch (c.mode) {
        case Mode::params:
            if (!physical_complete)
                v.push_back("params: physical parameters required");
            if (has_r) v.push_back("params: direct r does not apply");
            break;
        case Mode::sweep_field:
            if (!c.gap_ghz || !c.omega_ghz || !c.chi_ghz)
                v.push_back(
                    "sweep-field: gap-ghz, omega-ghz, and chi-ghz required");
            if (c.omega0_ghz)
                v.push_back("sweep-field: omega0-ghz does not apply");
            if (c.field_t)
                v.push_back(
                    "sweep-field: use field-min-t/field-max-t, not field-t");
            if (has_r) v.push_back("sweep-field: direct r does not apply");
            if (c.field_min_t && c.field_max_t &&
                !(*c.field_min_t < *c.field_max_t))
                v.push_back(
                    "field-min-t/field-max-t: need field_min < field_max");
            break;
        case Mode::mle_sim: {
            if (!c.phi_true) {
                v.push_back("mle-sim: phi-true required");
                break;
            }
            if (c.window_lo.has_value() != c.window_hi.has_value())
                v.push_back("window-lo and window-hi must be given together");
            if (c.window_lo && c.window_hi) {
                if (!window_fits_half_period(*c.window_lo, *c.window_hi))
                    v.push_back(
                        "window: must lie inside a half period adjacent to a "
                        "recurrence phase m*pi");
                else if (*c.phi_true < *c.window_lo ||
                         *c.phi_true > *c.window_hi)
                    v.push_back("phi-true: must lie inside the window");
            }
            if (c.batches < 2) v.push_back("batches: must be >= 2");
            if (c.grid_points < 3) v.push_back("grid-points: must be >= 3");
            if (c.refine_iters < 1) v.push_back("refine-iters: must be >= 1");
            break;
        }
        case Mode::adaptive_search:
            if (!has_r) v.push_back("adaptive-search: r schedule required");
            if (!c.true_omega_up_ghz || !(*c.true_omega_up_ghz > 0.0))
                v.push_back("adaptive-search: true-omega-up-ghz (> 0) required");
            if (c.m_index < 1) v.push_back("m-index: must be >= 1");
            if (!(c.prior_frac > 0.0 && c.prior_frac < 1.0))
                v.push_back("prior-frac: must lie in (0, 1)");
            if (c.shots < c.steps)
                v.push_back(
                    "shots: adaptive-search needs at least one shot per grid "
                    "point (shots >= steps)");
            break;
        default:
            break;
    }

    if (!v.empty()) throw ConfigError(std::move(v));
}

namespace {

using json = nlohmann::ordered_json;

template <typename T>
void put_opt(json& j, const char* key, const std::optional<T>& o) {
    if (o) j[key] = *o;
}

template <typename T>
void get_opt(const json& j, const char* key, std::optional<T>& o) {
    if (j.contains(key)) o = j.at(key).get<T>();
}

template <typename T>
void get_val(const json& j, const char* key, T& x) {
    if (j.contains(key)) x = j.at(key).get<T>();
}

}  // namespace

std::string config_to_json_text(const RunConfig& c) {
    json j;
    j["mode"] = to_string(c.mode);
    put_opt(j, "omega0_ghz", c.omega0_ghz);
    put_opt(j, "gap_ghz", c.gap_ghz);
    put_opt(j, "field_t", c.field_t);
    if (c.gap_ghz || c.field_t) j["gyro_ghz_per_t"] = c.gyro_ghz_per_t;
    put_opt(j, "omega_ghz", c.omega_ghz);
    put_opt(j, "chi_ghz", c.chi_ghz);
    if (!c.r_values.empty()) j["r"] = c.r_values;
    put_opt(j, "omega_up_ghz", c.omega_up_ghz);
    put_opt(j, "t2star_ns", c.t2star_ns);
    put_opt(j, "ns_product", c.ns_product);
    j["phi_min"] = c.phi_min;
    j["phi_max"] = c.phi_max;
    j["steps"] = c.steps;
    put_opt(j, "field_min_t", c.field_min_t);
    put_opt(j, "field_max_t", c.field_max_t);
    j["shots"] = c.shots;
    j["batches"] = c.batches;
    j["seed"] = c.seed;
    j["tail_tol"] = c.tail_tol;
    put_opt(j, "phi_true", c.phi_true);
    put_opt(j, "window_lo", c.window_lo);
    put_opt(j, "window_hi", c.window_hi);
    j["grid_points"] = c.grid_points;
    j["refine_iters"] = c.refine_iters;
    put_opt(j, "true_omega_up_ghz", c.true_omega_up_ghz);
    if (c.mode == Mode::adaptive_search) {
        j["m_index"] = c.m_index;
        j["prior_frac"] = c.prior_frac;
    }
    return j.dump();
}

RunConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("config: JSON parse failure: ") +
                           e.what()});
    }
    RunConfig c;
    try {
        if (j.contains("mode"))
            c.mode = mode_from_string(j.at("mode").get<std::string>());
        get_opt(j, "omega0_ghz", c.omega0_ghz);
        get_opt(j, "gap_ghz", c.gap_ghz);
        get_opt(j, "field_t", c.field_t);
        get_val(j, "gyro_ghz_per_t", c.gyro_ghz_per_t);
        get_opt(j, "omega_ghz", c.omega_ghz);
        get_opt(j, "chi_ghz", c.chi_ghz);
        if (j.contains("r")) c.r_values = j.at("r").get<std::vector<double>>();
        get_opt(j, "omega_up_ghz", c.omega_up_ghz);
        get_opt(j, "t2star_ns", c.t2star_ns);
        get_opt(j, "ns_product", c.ns_product);
        get_val(j, "phi_min", c.phi_min);
        get_val(j, "phi_max", c.phi_max);
        get_val(j, "steps", c.steps);
        get_opt(j, "field_min_t", c.field_min_t);
        get_opt(j, "field_max_t", c.field_max_t);
        get_val(j, "shots", c.shots);
        get_val(j, "batches", c.batches);
        get_val(j, "seed", c.seed);
        get_val(j, "tail_tol", c.tail_tol);
        get_opt(j, "phi_true", c.phi_true);
        get_opt(j, "window_lo", c.window_lo);
        get_opt(j, "window_hi", c.window_hi);
        get_val(j, "grid_points", c.grid_points);
        get_val(j, "refine_iters", c.refine_iters);
        get_opt(j, "true_omega_up_ghz", c.true_omega_up_ghz);
        get_val(j, "m_index", c.m_index);
        get_val(j, "prior_frac", c.prior_frac);
        if (j.contains("format")) {
            const auto f = j.at("format").get<std::string>();
            if (f == "csv")
                c.format = OutputFormat::csv;
            else if (f == "json")
                c.format = OutputFormat::json;
            else
                throw ConfigError({"format: expected csv or json"});
        }
    } catch (const json::exception& e) {
        throw ConfigError({std::string("config: bad field type: ") + e.what()});
    }
    return c;
}

}  // namespace quench
