#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Run description shared by the command-line tool and the tests. A config
// carries either a direct relative-squeeze list or one physical parameter
// set (never both); validate() reports every violation at once.

namespace quench {

enum class Mode {
    params,
    sweep_field,
    coherence,
    fisher,
    mle_sim,
    qsl_check,
    adaptive_search,
};

enum class OutputFormat { csv, json };

const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);

struct ConfigError : std::runtime_error {
    std::vector<std::string> violations;
    explicit ConfigError(std::vector<std::string> v);
};

struct RunConfig {
    Mode mode = Mode::params;

    // physical parameterization (GHz / tesla)
    std::optional<double> omega0_ghz;  // direct mode frequency, or:
    std::optional<double> gap_ghz;     // anisotropy gap plus applied field
    std::optional<double> field_t;
    double gyro_ghz_per_t = 28.0;
    std::optional<double> omega_ghz;  // pair-creation drive Omega
    std::optional<double> chi_ghz;    // dispersive shift

    // direct parameterization; also the stage schedule for adaptive-search
    std::vector<double> r_values;
    std::optional<double> omega_up_ghz;  // time axis for direct-r runs

    std::optional<double> t2star_ns;
    std::optional<double> ns_product;

    double phi_min = 0.0;
    double phi_max = 6.283185307179586476925286766559;
    int steps = 400;

    std::optional<double> field_min_t;
    std::optional<double> field_max_t;

    int shots = 1000;
    int batches = 100;
    std::uint64_t seed = 1;
    double tail_tol = 1e-12;

    std::optional<double> phi_true;
    std::optional<double> window_lo;
    std::optional<double> window_hi;
    int grid_points = 512;
    int refine_iters = 60;

    // adaptive-search
    std::optional<double> true_omega_up_ghz;
    int m_index = 1;
    double prior_frac = 0.4;

    std::string out_path;  // empty writes to stdout
    OutputFormat format = OutputFormat::csv;
};

// Throws ConfigError listing all violations.
void validate(const RunConfig& c);

// JSON round trip for --config files and for output metadata.
RunConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const RunConfig& c);

}  // namespace quench
