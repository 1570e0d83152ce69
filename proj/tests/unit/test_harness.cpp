#include "onm/error.hpp"
#include "onm/harness.hpp"
#include "onm/scenario.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <algorithm>
#include <sstream>

using namespace onm;
using nlohmann::json;

namespace {

json small_sweep()
{
    return json::parse(R"({
        "schema_version": 1,
        "name": "unit-small",
        "experiment": "snr-sweep",
        "seed": 7,
        "duration": 0.5,
        "chains": ["caf"],
        "noise": [
            {"kind": "thermal", "snr_db": 20},
            {"kind": "poisson", "outlier_to_thermal_db": 20, "lambda_factor": 0.01}
        ],
        "sweep": {"outlier_to_thermal_db": [10, 20], "thermal_snr_db": [20, 30]},
        "outputs": {"psd": true, "svg": true, "traces": true, "psd_segment": 1024}
    })");
}

std::string config_error_path(const json& doc)
{
    try {
        parse_scenario(doc);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<no error>";
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() / name)
    {
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_SUITE("harness") {

TEST_CASE("scenario errors carry their location")
{
    auto doc = small_sweep();
    doc["noise"][0]["snr"] = 3;
    CHECK(config_error_path(doc) == "/noise/0/snr");

    doc = small_sweep();
    doc["noise"][1]["lambda_factor"] = 0.0;
    CHECK(config_error_path(doc) == "/noise/1/lambda_factor");

    doc = small_sweep();
    doc["noise"][1] = {{"kind", "bursts"}, {"duty_cycle", 1.5}};
    CHECK(config_error_path(doc) == "/noise/1/duty_cycle");

    doc = small_sweep();
    doc["chains"] = {"caf", "median"};
    CHECK(config_error_path(doc) == "/chains/1");

    doc = small_sweep();
    doc["duration"] = "long";
    CHECK(config_error_path(doc) == "/duration");

    doc = small_sweep();
    doc["schema_version"] = 2;
    CHECK(config_error_path(doc) == "/schema_version");

    doc = small_sweep();
    doc["sweep"]["beta"] = json::array();
    CHECK(config_error_path(doc) == "/sweep/beta");
}

TEST_CASE("scenario json round-trips")
{
    const Scenario s = parse_scenario(small_sweep());
    const json j = to_json(s);
    CHECK(to_json(parse_scenario(j)) == j);
    CHECK(j.at("setup").at("b0") == 1000.0);
}

TEST_CASE("grid expansion order and substitution")
{
    const Scenario s = parse_scenario(small_sweep());
    const auto grid = expand_grid(s);
    REQUIRE(grid.size() == 4);
    CHECK(s.sweep.size() == 4);
    // thermal_snr_db is the outer axis.
    CHECK(*grid[0].value(SweepAxis::thermal_snr_db) == 20.0);
    CHECK(*grid[0].value(SweepAxis::outlier_to_thermal_db) == 10.0);
    CHECK(*grid[1].value(SweepAxis::thermal_snr_db) == 20.0);
    CHECK(*grid[1].value(SweepAxis::outlier_to_thermal_db) == 20.0);
    CHECK(*grid[2].value(SweepAxis::thermal_snr_db) == 30.0);
    CHECK(grid[3].noise[0].snr_db == 30.0);
    CHECK(grid[3].noise[1].outlier_to_thermal_db == 20.0);
    CHECK_FALSE(grid[0].value(SweepAxis::duty_cycle).has_value());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(grid[i].index == i);
    }
    CHECK(parse_sweep_axis("tau_scale") == SweepAxis::tau_scale);
    CHECK_THROWS(parse_sweep_axis("gain"));
}

TEST_CASE("synthesized noise is calibrated in the baseband")
{
    const Scenario s = parse_scenario(small_sweep());
    const auto grid = expand_grid(s);
    const auto sig = synthesize_point(s, grid[0]);
    CHECK(10 * std::log10(sig.signal_power / sig.thermal_power) == doctest::Approx(20.0).epsilon(1e-6));
    CHECK(sig.clean.size() == sig.noise.size());
}

TEST_CASE("bundled scenarios validate")
{
    const auto names = bundled_scenarios();
    CHECK(names.size() >= 9);
    for (const auto& n : names) {
        CAPTURE(n);
        CHECK_NOTHROW(load_scenario(resolve_scenario(n)));
    }
    CHECK_THROWS_AS(resolve_scenario("no-such-scenario"), ConfigError);
}

TEST_CASE("runs are deterministic and write the documented files")
{
    const Scenario s = parse_scenario(small_sweep());
    TempDir a("onm-unit-a"), b("onm-unit-b");
    const auto ra = run_scenario(s, {a.path, SignalFormat::csv, true});
    const auto rb = run_scenario(s, {b.path, SignalFormat::csv, true});
    REQUIRE(ra.files.size() == rb.files.size());
    for (std::size_t i = 0; i < ra.files.size(); ++i) {
        CAPTURE(ra.files[i]);
        CHECK(slurp(ra.files[i]) == slurp(rb.files[i]));
    }
    const std::string results = slurp(ra.directory / "results.csv");
    CHECK(results.rfind(sweep_results_header() + "\n", 0) == 0);
    // Four points, one chain, two roles.
    CHECK(std::count(results.begin(), results.end(), '\n') == 1 + 4 * 2);
    CHECK(std::filesystem::exists(ra.directory / "summary.json"));
    CHECK(std::filesystem::exists(ra.directory / "gain.svg"));
    CHECK(std::filesystem::exists(ra.directory / "psd" / "point-000-caf.csv"));
    CHECK(std::filesystem::exists(ra.directory / "traces" / "point-003-caf.csv"));

    Scenario other = s;
    other.seed = 8;
    const auto rc = run_scenario(other, {a.path, SignalFormat::csv, false});
    CHECK(rc.files.empty());
    CHECK(rc.points[0].chains[0].measurement.nonlinear.baseband_snr_db
          != ra.points[0].chains[0].measurement.nonlinear.baseband_snr_db);
}

TEST_CASE("describe mentions the grid")
{
    const std::string d = describe_scenario(parse_scenario(small_sweep()));
    CHECK(d.find("unit-small") != std::string::npos);
    CHECK(d.find("4") != std::string::npos);
}

}
