#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quench/core_model.hpp"
#include "quench/inference.hpp"
#include "quench/run_config.hpp"
#include "quench/runner.hpp"
#include "quench/squeezed_state.hpp"

// Command-line front end. Exit codes: 0 success, 2 configuration or usage
// error, 3 unstable parameter set, 4 truncation overflow, 5 degenerate
// likelihood, 1 anything else. Errors go to stderr as one JSON record.

namespace {

void print_error(const std::string& kind, const std::string& message,
                 const std::vector<std::string>& violations = {}) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    if (!violations.empty()) j["violations"] = violations;
    std::cerr << j.dump() << "\n";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw quench::ConfigError({"config: cannot open " + path});
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "quenchsim: squeezed Kittel-mode quench simulator and frequency "
        "estimation toolkit"};
    app.set_version_flag("--version", "0.1.0");

    std::string mode_str;
    app.add_option("mode", mode_str,
                   "params | sweep-field | coherence | fisher | mle-sim | "
                   "qsl-check | adaptive-search");

    std::string config_path;
    app.add_option("--config", config_path,
                   "JSON run description; explicit flags override it");

    std::vector<double> r_values;
    app.add_option("--r", r_values,
                   "relative squeeze value(s); schedule for adaptive-search")
        ->delimiter(',');

    double omega0_ghz = 0, gap_ghz = 0, field_t = 0, gyro = 28.0;
    double omega_ghz = 0, chi_ghz = 0, omega_up_ghz = 0;
    double t2star_ns = 0, ns_product = 0;
    app.add_option("--omega0-ghz", omega0_ghz, "bare mode frequency, GHz");
    app.add_option("--gap-ghz", gap_ghz, "zero-field gap, GHz");
    app.add_option("--field-t", field_t, "applied field, tesla");
    app.add_option("--gyro-ghz-per-t", gyro, "field-to-frequency slope");
    app.add_option("--omega-ghz", omega_ghz, "pair-creation drive, GHz");
    app.add_option("--chi-ghz", chi_ghz, "dispersive qubit shift, GHz");
    app.add_option("--omega-up-ghz", omega_up_ghz,
                   "eigenfrequency for direct-r time axes, GHz");
    app.add_option("--t2star-ns", t2star_ns, "qubit dephasing time, ns");
    app.add_option("--ns-product", ns_product,
                   "total spin NS for the linearization validity check");

    double phi_min = 0, phi_max = 0, field_min_t = 0, field_max_t = 0;
    int steps = 0;
    app.add_option("--phi-min", phi_min, "phase grid start, rad");
    app.add_option("--phi-max", phi_max, "phase grid end, rad");
    app.add_option("--steps", steps, "grid points");
    app.add_option("--field-min-t", field_min_t, "sweep start, tesla");
    app.add_option("--field-max-t", field_max_t, "sweep end, tesla");

    int shots = 0, batches = 0;
    std::uint64_t seed = 0;
    double tail_tol = 0;
    app.add_option("--shots", shots, "measurements per batch or per stage");
    app.add_option("--batches", batches, "independent repetitions");
    app.add_option("--seed", seed, "base RNG seed");
    app.add_option("--tail-tol", tail_tol, "neglected Fock-tail mass");

    double phi_true = 0, window_lo = 0, window_hi = 0;
    int grid_points = 0, refine_iters = 0;
    app.add_option("--phi-true", phi_true, "phase generating the data, rad");
    app.add_option("--window-lo", window_lo, "estimation window start, rad");
    app.add_option("--window-hi", window_hi, "estimation window end, rad");
    app.add_option("--grid-points", grid_points, "likelihood grid size");
    app.add_option("--refine-iters", refine_iters,
                   "golden-section refinement steps");

    double true_omega_up_ghz = 0, prior_frac = 0;
    int m_index = 0;
    app.add_option("--true-omega-up-ghz", true_omega_up_ghz,
                   "hidden eigenfrequency for adaptive-search, GHz");
    app.add_option("--m-index", m_index, "recurrence index to track");
    app.add_option("--prior-frac", prior_frac,
                   "relative half width of the initial time window");

    std::string out_path, format = "csv";
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        quench::RunConfig c;
        if (app.count("--config")) c = quench::config_from_json_text(slurp(config_path));
        if (app.count("mode")) c.mode = quench::mode_from_string(mode_str);
        else if (!app.count("--config"))
            throw quench::ConfigError({"mode: required (positional or via --config)"});
        if (app.count("--r")) c.r_values = r_values;
        if (app.count("--omega0-ghz")) c.omega0_ghz = omega0_ghz;
        if (app.count("--gap-ghz")) c.gap_ghz = gap_ghz;
        if (app.count("--field-t")) c.field_t = field_t;
        if (app.count("--gyro-ghz-per-t")) c.gyro_ghz_per_t = gyro;
        if (app.count("--omega-ghz")) c.omega_ghz = omega_ghz;
        if (app.count("--chi-ghz")) c.chi_ghz = chi_ghz;
        if (app.count("--omega-up-ghz")) c.omega_up_ghz = omega_up_ghz;
        if (app.count("--t2star-ns")) c.t2star_ns = t2star_ns;
        if (app.count("--ns-product")) c.ns_product = ns_product;
        if (app.count("--phi-min")) c.phi_min = phi_min;
        if (app.count("--phi-max")) c.phi_max = phi_max;
        if (app.count("--steps")) c.steps = steps;
        if (app.count("--field-min-t")) c.field_min_t = field_min_t;
        if (app.count("--field-max-t")) c.field_max_t = field_max_t;
        if (app.count("--shots")) c.shots = shots;
        if (app.count("--batches")) c.batches = batches;
        if (app.count("--seed")) c.seed = seed;
        if (app.count("--tail-tol")) c.tail_tol = tail_tol;
        if (app.count("--phi-true")) c.phi_true = phi_true;
        if (app.count("--window-lo")) c.window_lo = window_lo;
        if (app.count("--window-hi")) c.window_hi = window_hi;
        if (app.count("--grid-points")) c.grid_points = grid_points;
        if (app.count("--refine-iters")) c.refine_iters = refine_iters;
        if (app.count("--true-omega-up-ghz"))
            c.true_omega_up_ghz = true_omega_up_ghz;
        if (app.count("--m-index")) c.m_index = m_index;
        if (app.count("--prior-frac")) c.prior_frac = prior_frac;
        if (app.count("--out")) c.out_path = out_path;
        if (app.count("--format"))
            c.format = format == "json" ? quench::OutputFormat::json
                                        : quench::OutputFormat::csv;

        const std::string doc = quench::run(c);
        if (c.out_path.empty()) {
            std::cout << doc;
        } else {
            std::ofstream out(c.out_path);
            if (!out) {
                print_error("io", "cannot open " + c.out_path);
                return 1;
            }
            out << doc;
        }
        return 0;
    } catch (const quench::ConfigError& e) {
        print_error("config", e.what(), e.violations);
        return 2;
    } catch (const quench::StabilityError& e) {
        print_error("stability", e.what());
        return 3;
    } catch (const quench::TruncationOverflow& e) {
        print_error("truncation", e.what());
        return 4;
    } catch (const quench::DegenerateLikelihood& e) {
        print_error("degenerate-likelihood", e.what());
        return 5;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 1;
    }
}
