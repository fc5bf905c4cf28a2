#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "quench/adaptive_search.hpp"
#include "quench/emit.hpp"
#include "quench/run_config.hpp"
#include "quench/runner.hpp"

using namespace quench;
using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

std::vector<std::string> violations_of(const RunConfig& c) {
    try {
        validate(c);
    } catch (const ConfigError& e) {
        return e.violations;
    }
    return {};
}

bool mentions(const std::vector<std::string>& v, const char* needle) {
    for (const auto& s : v)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("mode names round trip") {
    for (Mode m : {Mode::params, Mode::sweep_field, Mode::coherence,
                   Mode::fisher, Mode::mle_sim, Mode::qsl_check,
                   Mode::adaptive_search})
        CHECK(mode_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(mode_from_string("frobnicate"), ConfigError);
}

TEST_CASE("validation collects every violation at once") {
    RunConfig c;
    c.mode = Mode::fisher;
    c.r_values = {1.0};
    c.steps = 1;
    c.shots = 0;
    c.tail_tol = 2.0;
    const auto v = violations_of(c);
    CHECK(v.size() >= 3);
    CHECK(mentions(v, "steps"));
    CHECK(mentions(v, "shots"));
    CHECK(mentions(v, "tail-tol"));
}

TEST_CASE("direct r and physical parameters are mutually exclusive") {
    RunConfig c;
    c.mode = Mode::fisher;
    c.r_values = {1.0};
    c.omega0_ghz = 7.0;
    c.omega_ghz = 0.5;
    c.chi_ghz = 0.5;
    CHECK(mentions(violations_of(c), "mutually exclusive"));

    RunConfig d;
    d.mode = Mode::fisher;
    CHECK(mentions(violations_of(d), "provide either"));
}

TEST_CASE("gap and field must come together") {
    RunConfig c;
    c.mode = Mode::params;
    c.gap_ghz = 7.0;
    c.omega_ghz = 0.5;
    c.chi_ghz = 0.5;
    CHECK(mentions(violations_of(c), "together"));
}

TEST_CASE("mle-sim specific rules") {
    RunConfig c;
    c.mode = Mode::mle_sim;
    c.r_values = {1.0};
    SUBCASE("phi_true required") {
        CHECK(mentions(violations_of(c), "phi-true"));
    }
    SUBCASE("window must fit a half period") {
        c.phi_true = 1.5;
        c.window_lo = 1.37;
        c.window_hi = 1.77;
        CHECK(mentions(violations_of(c), "half period"));
    }
    SUBCASE("phi_true must sit inside the window") {
        c.phi_true = 0.2;
        c.window_lo = kPi;
        c.window_hi = kPi + 1.0;
        CHECK(mentions(violations_of(c), "inside the window"));
    }
    SUBCASE("well formed passes") {
        c.phi_true = kPi + 0.05;
        c.window_lo = kPi;
        c.window_hi = kPi + 1.2;
        CHECK(violations_of(c).empty());
    }
}

TEST_CASE("adaptive-search specific rules") {
    RunConfig c;
    c.mode = Mode::adaptive_search;
    const auto v = violations_of(c);
    CHECK(mentions(v, "schedule"));
    CHECK(mentions(v, "true-omega-up-ghz"));
    c.r_values = {0.3, 0.6, 1.0};
    c.true_omega_up_ghz = 2.8;
    c.steps = 40;
    c.shots = 1000;
    CHECK(violations_of(c).empty());
    c.prior_frac = 1.5;
    CHECK(mentions(violations_of(c), "prior-frac"));
}

TEST_CASE("config JSON round trip is lossless") {
    RunConfig c;
    c.mode = Mode::mle_sim;
    c.r_values = {1.0};
    c.phi_true = kPi + 0.05;
    c.window_lo = kPi;
    c.window_hi = kPi + 1.2;
    c.shots = 777;
    c.batches = 55;
    c.seed = 123456789012345ull;
    c.tail_tol = 1e-10;
    c.t2star_ns = 250.0;
    const std::string text = config_to_json_text(c);
    const RunConfig back = config_from_json_text(text);
    CHECK(config_to_json_text(back) == text);
    CHECK(back.mode == Mode::mle_sim);
    CHECK(back.seed == c.seed);
    CHECK(back.r_values == c.r_values);
    CHECK(*back.phi_true == *c.phi_true);
    CHECK(*back.t2star_ns == 250.0);
}

TEST_CASE("malformed config text is a config error") {
    CHECK_THROWS_AS(config_from_json_text("{nope"), ConfigError);
    CHECK_THROWS_AS(config_from_json_text(R"({"mode": "bogus"})"),
                    ConfigError);
    CHECK_THROWS_AS(config_from_json_text(R"({"steps": "many"})"),
                    ConfigError);
}

TEST_CASE("table documents") {
    SUBCASE("empty grid gives a header-only CSV") {
        TableDoc doc;
        doc.columns = {"phi", "fisher"};
        CHECK(to_csv(doc) == "phi,fisher\n");
    }
    SUBCASE("meta comment line leads the CSV") {
        TableDoc doc;
        doc.meta["seed"] = 7;
        doc.columns = {"x"};
        json row;
        row["x"] = 0.5;
        doc.rows.push_back(row);
        const std::string csv = to_csv(doc);
        CHECK(csv.rfind("# meta: {\"seed\":7}\n", 0) == 0);
        CHECK(csv.find("x\n0.5\n") != std::string::npos);
    }
    SUBCASE("doubles survive the CSV text round trip bit for bit") {
        for (double x : {kPi, 1.0 / 3.0, 1e-300, 0.1, -2.5e17}) {
            const double back = std::stod(format_double(x));
            CHECK(std::memcmp(&back, &x, sizeof x) == 0);
        }
        CHECK(format_double(std::nan("")) == "nan");
    }
    SUBCASE("JSON payload carries meta, columns, rows, version") {
        TableDoc doc;
        doc.meta["mode"] = "fisher";
        doc.columns = {"a", "b"};
        json row;
        row["a"] = 1.5;
        row["b"] = std::nan("");
        doc.rows.push_back(row);
        const json j = json::parse(to_json(doc, {}));
        CHECK(j["meta"]["mode"] == "fisher");
        CHECK(j["columns"].size() == 2);
        CHECK(j["rows"][0]["a"] == 1.5);
        CHECK_FALSE(j["rows"][0].contains("b"));  // NaN keys are omitted
        CHECK(j["version"] == "0.1.0");
    }
}

TEST_CASE("params mode emits the derived quantities") {
    RunConfig c;
    c.mode = Mode::params;
    c.omega0_ghz = 3.0;
    c.omega_ghz = 0.5;
    c.chi_ghz = 0.5;
    c.format = OutputFormat::json;
    const json j = json::parse(run(c));
    REQUIRE(j["rows"].size() == 1);
    const auto& row = j["rows"][0];
    // scale covariance makes the GHz-named inputs reproduce the unit-free
    // reference point
    CHECK(row["omega_up_ghz"].get<double>() ==
          doctest::Approx(3.3541019662496845).epsilon(1e-13));
    CHECK(row["r"].get<double>() ==
          doctest::Approx(0.064877798871271151).epsilon(1e-12));
    CHECK_FALSE(row.contains("validity_ok"));

    c.ns_product = 1e6;
    const json j2 = json::parse(run(c));
    CHECK(j2["rows"][0]["validity_ok"] == true);
}

TEST_CASE("fisher mode tabulates every requested r") {
    RunConfig c;
    c.mode = Mode::fisher;
    c.r_values = {0.75, 1.0};
    c.steps = 50;
    c.phi_min = 0.0;
    c.phi_max = 2.0 * kPi;
    c.format = OutputFormat::json;
    const json j = json::parse(run(c));
    CHECK(j["rows"].size() == 100);
    CHECK(j["meta"]["mode"] == "fisher");
    CHECK(j["rows"][0]["r"] == 0.75);
    CHECK(j["rows"][99]["r"] == 1.0);
}

TEST_CASE("coherence mode with r = 0 pins p to one") {
    RunConfig c;
    c.mode = Mode::coherence;
    c.r_values = {0.0};
    c.steps = 20;
    c.format = OutputFormat::json;
    const json j = json::parse(run(c));
    REQUIRE(j["rows"].size() == 20);
    for (const auto& row : j["rows"])
        CHECK(row["p_plus"].get<double>() == 1.0);
}

TEST_CASE("sweep mode omits NaN values from JSON rows") {
    RunConfig c;
    c.mode = Mode::sweep_field;
    c.gap_ghz = 7.0;
    c.omega_ghz = 0.5;
    c.chi_ghz = 0.5;
    c.field_min_t = -0.25;
    c.field_max_t = 0.0;
    c.steps = 26;
    c.format = OutputFormat::json;
    const json j = json::parse(run(c));
    bool saw_unstable = false;
    for (const auto& row : j["rows"]) {
        if (row["stable"] == false) {
            saw_unstable = true;
            CHECK_FALSE(row.contains("r"));
        } else {
            CHECK(row.contains("r"));
        }
    }
    CHECK(saw_unstable);
}

TEST_CASE("qsl mode reports a nonnegative margin") {
    RunConfig c;
    c.mode = Mode::qsl_check;
    c.r_values = {1.0};
    c.steps = 501;
    c.format = OutputFormat::json;
    const json j = json::parse(run(c));
    CHECK(j["meta"]["qsl_min_margin"].get<double>() >= -1e-8);
    CHECK(j["rows"].size() == 501);
}

TEST_CASE("mle-sim mode summarizes the study") {
    RunConfig c;
    c.mode = Mode::mle_sim;
    c.r_values = {1.0};
    c.phi_true = kPi + 0.05;
    c.shots = 500;
    c.batches = 30;
    c.grid_points = 128;
    c.format = OutputFormat::json;
    const json j = json::parse(run(c));
    CHECK(j["rows"].size() == 30);
    CHECK(j["meta"]["variance_ratio"].get<double>() > 0.0);
    // default window hugs the recurrence at pi from the right
    CHECK(j["meta"]["window_lo"].get<double>() ==
          doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("adaptive-search fails softly at r = 0") {
    RunConfig c;
    c.mode = Mode::adaptive_search;
    c.r_values = {0.0};
    c.true_omega_up_ghz = 2.8;
    c.steps = 40;
    c.shots = 1000;
    c.format = OutputFormat::json;
    const json j = json::parse(run(c));
    CHECK(j["meta"]["localized"] == false);
    CHECK(j["rows"][0]["located"] == false);
    CHECK_FALSE(j["rows"][0].contains("omega_hat_radns"));
}

TEST_CASE("repeated runs are byte identical") {
    RunConfig c;
    c.mode = Mode::mle_sim;
    c.r_values = {1.0};
    c.phi_true = kPi + 0.05;
    c.shots = 400;
    c.batches = 20;
    c.grid_points = 128;
    c.seed = 31;
    CHECK(run(c) == run(c));

    RunConfig a;
    a.mode = Mode::adaptive_search;
    a.r_values = {0.3, 0.6};
    a.true_omega_up_ghz = 2.8;
    a.steps = 30;
    a.shots = 600;
    a.seed = 5;
    a.format = OutputFormat::json;
    CHECK(run(a) == run(a));
}

TEST_CASE("run refuses an invalid config") {
    RunConfig c;
    c.mode = Mode::fisher;
    c.steps = 1;
    CHECK_THROWS_AS(run(c), ConfigError);
}
