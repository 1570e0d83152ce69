#pragma once

#include "onm/chains.hpp"
#include "onm/experiments.hpp"
#include "onm/scenario.hpp"
#include "onm/signal_io.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace onm {

/// Grid axes in expansion order (the first varies slowest).
enum class SweepAxis { thermal_snr_db, outlier_to_thermal_db, lambda_factor, duty_cycle, psd_db, beta, tau_scale };

inline constexpr std::size_t sweep_axis_count = 7;
const char* to_string(SweepAxis axis) noexcept;
SweepAxis parse_sweep_axis(const std::string& name);
const std::vector<double>& axis_values(const SweepAxes& axes, SweepAxis axis);
std::vector<double>& axis_values(SweepAxes& axes, SweepAxis axis);

/// One point of the cartesian grid: noise list and setup with the axis
/// values substituted. `values` holds the effective value of every axis, or
/// nothing when the scenario has no component it applies to.
struct GridPoint {
    std::size_t index = 0;
    std::vector<NoiseComponent> noise;
    WidebandSetup setup;
    std::array<std::optional<double>, sweep_axis_count> values{};

    std::optional<double> value(SweepAxis axis) const { return values[static_cast<std::size_t>(axis)]; }
};

/// Sweep values replace the matching field of every applicable component:
/// thermal SNR on the thermal term, outlier-to-thermal power and rate on each
/// outlier term, duty cycle on bursts, PSD on adjacent channels. beta and
/// tau_scale override both the wideband CAF and the shared-band ADiC.
std::vector<GridPoint> expand_grid(const Scenario& scenario);

/// Clean signal and calibrated total noise of a grid point. The clean signal
/// uses derive_seed(seed, 0, index) and component j uses derive_seed(seed, 1 + j, index).
struct PointSignals {
    Signal clean{{}, 1.0};
    Signal noise{{}, 1.0};
    double signal_power = 0.0;   // baseband, after the plain linear chain
    double thermal_power = 0.0;
};

PointSignals synthesize_point(const Scenario& scenario, const GridPoint& point);

struct ChainOutcome {
    ChainKind chain = ChainKind::caf;
    SnrMeasurement measurement;
};

/// Paired linear-twin and nonlinear reports for every chain at one point.
struct PointResult {
    GridPoint point;
    double signal_power = 0.0;
    double thermal_power = 0.0;
    std::vector<ChainOutcome> chains;
};

PointResult run_point(const Scenario& scenario, const GridPoint& point);

struct RunOptions {
    std::filesystem::path out_dir = "out";
    SignalFormat format = SignalFormat::csv;
    bool write_files = true;
};

struct RunResult {
    std::filesystem::path directory;          // out_dir / scenario name
    std::vector<PointResult> points;          // SNR sweeps; traces released after writing
    std::vector<ToyCase> toy_cases;
    std::optional<DeltaSigmaExperimentResult> deltasigma;
    std::vector<std::filesystem::path> files; // every file written, in order
};

/// Runs the scenario and writes its artifacts under out_dir / name.
/// The output depends only on the scenario (including its seed).
RunResult run_scenario(const Scenario& scenario, const RunOptions& options);

/// Human-readable summary: experiment, chains, noise terms, grid size, lambda_c.
std::string describe_scenario(const Scenario& scenario);

/// Column header of results.csv for SNR sweeps.
std::string sweep_results_header();

} // namespace onm
