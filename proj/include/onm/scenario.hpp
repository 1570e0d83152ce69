#pragma once

#include "onm/chains.hpp"
#include "onm/experiments.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace onm {

inline constexpr int scenario_schema_version = 1;

enum class ExperimentKind { snr_sweep, toy1, toy2, deltasigma };

const char* to_string(ExperimentKind kind) noexcept;

enum class NoiseComponentKind { thermal, poisson, bursts, adjacent_channel, narrowband_poisson };

const char* to_string(NoiseComponentKind kind) noexcept;

/// One additive noise term of an SNR experiment. Powers are baseband powers,
/// measured after the plain linear chain.
struct NoiseComponent {
    NoiseComponentKind kind = NoiseComponentKind::thermal;
    double snr_db = 30.0;                 // thermal: signal-to-thermal
    double outlier_to_thermal_db = 20.0;  // poisson, bursts, narrowband-poisson
    double lambda_factor = 0.01;          // event rate (bursts: repetition rate) in units of lambda_c
    double duty_cycle = 0.1;              // bursts
    double psd_db = 30.0;                 // adjacent channel PSD over the signal's
    double center_factor = 4.0;           // adjacent channel center, units of b0
    double bandwidth_factor = 0.5;        // adjacent channel bandwidth, units of b0

    bool is_outlier() const noexcept;
};

/// Grid axes; an empty axis keeps the value from the noise list or setup.
struct SweepAxes {
    std::vector<double> thermal_snr_db;
    std::vector<double> outlier_to_thermal_db;
    std::vector<double> lambda_factor;
    std::vector<double> duty_cycle;
    std::vector<double> psd_db;
    std::vector<double> beta;
    std::vector<double> tau_scale;

    /// Number of grid points (product of non-empty axis lengths).
    std::size_t size() const noexcept;
};

struct OutputOptions {
    bool psd = true;
    bool svg = true;
    bool traces = true;
    std::size_t psd_segment = 4096;
};

struct Scenario {
    int schema_version = scenario_schema_version;
    std::string name;
    std::string description;
    ExperimentKind experiment = ExperimentKind::snr_sweep;
    std::uint64_t seed = 1;
    double duration = 2.0;  // seconds, SNR experiments

    WidebandSetup setup;
    std::vector<ChainKind> chains{ChainKind::caf};
    std::vector<NoiseComponent> noise;
    SweepAxes sweep;
    OutputOptions outputs;

    Toy1Config toy1;
    Toy2Config toy2;
    DeltaSigmaExperimentConfig deltasigma;
};

/// Parses and validates a scenario document. Unknown keys, wrong types and
/// violated invariants throw ConfigError carrying the JSON-pointer location.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

/// Checks every invariant of an already-built scenario.
void validate_scenario(const Scenario& scenario);

/// Full document, including defaults; parse_scenario(to_json(s)) == s.
nlohmann::json to_json(const Scenario& scenario);

/// Directory of the bundled scenarios (compiled in; ONM_SCENARIO_DIR
/// environment variable overrides it).
std::filesystem::path bundled_scenario_dir();
/// Sorted names of the bundled scenarios.
std::vector<std::string> bundled_scenarios();
/// A path to an existing file, or the name of a bundled scenario.
std::filesystem::path resolve_scenario(const std::string& name_or_path);

} // namespace onm
