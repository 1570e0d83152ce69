#pragma once

#include "onm/caf.hpp"
#include "onm/deltasigma.hpp"
#include "onm/iir.hpp"
#include "onm/qtf.hpp"
#include "onm/signal.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace onm {

/// Traces and paired errors of one toy-example case.
struct ToyCase {
    std::string phase;           // "destructive-first", "constructive-first", ...
    Signal clean;                // signal of interest
    Signal noisy;                // signal + interference
    Signal linear_output;
    Signal nonlinear_output;
    Signal linear_reference;     // clean signal through the linear chain
    Signal nonlinear_reference;  // clean signal through the bypassed nonlinear chain
    double linear_rms_error = 0.0;
    double nonlinear_rms_error = 0.0;
    std::size_t skip = 0;        // samples excluded from the errors

    double ratio() const noexcept { return nonlinear_rms_error / linear_rms_error; }
};

/// Two equal-power tones (periods T and T/3) plus an impulse train of period
/// T whose 1st and 3rd harmonics match the tones in power. The linear chain
/// is a 2nd-order Butterworth highpass at 1/(6T) followed by a 4th-order
/// Butterworth lowpass at 9/(2T); the nonlinear chain puts a feedback ADiC
/// ahead of it.
struct Toy1Config {
    double period = 0.01;          // T, seconds
    double rate = 20000.0;
    double amplitude = 1.0;        // per tone
    int periods = 60;
    int skip_periods = 20;
    double tau_periods = 0.01;     // ADiC tau in units of T
    FenceParams fences{};

    void validate() const;
    IirDesign bandpass() const;
};

/// Runs the destructive-first (impulses at T/2) and constructive-first
/// (impulses at 0) cases.
std::vector<ToyCase> run_toy1(const Toy1Config& config);

/// Sine of period T/3 plus a square wave of period T whose 3rd harmonic
/// matches the sine in power. The linear chain is a Butterworth bandpass
/// (highpass order 4 at 2/T, lowpass order 4 at 4.5/T); the nonlinear chain
/// is DerivativeChain with a CAF split between band_pass_factor / T and
/// band_stop_factor / T.
struct Toy2Config {
    double period = 0.01;
    double rate = 20000.0;
    double amplitude = 1.0;        // sine amplitude
    int periods = 60;
    int skip_periods = 20;
    double band_pass_factor = 4.0;  // CAF passband edge, units of 1/T
    double band_stop_factor = 6.0;
    double tau_periods = 0.01;
    double floor_fraction = 1.0;
    double leak_factor = 0.01;      // leak frequency in units of 3/T
    FenceParams fences{};

    void validate() const;
    IirDesign bandpass() const;
    DerivativeChainConfig chain() const;
};

/// Runs the constructive (square in phase with the sine's 3rd harmonic) and
/// destructive cases.
std::vector<ToyCase> run_toy2(const Toy2Config& config);

/// Delta-sigma pipeline checks at desk-scale rates.
struct DeltaSigmaExperimentConfig {
    PipelineConfig pipeline{};
    double dc_level = 0.5;
    std::size_t dc_samples = 200000;
    double duration = 0.2;             // seconds, for the linearity and impulse runs
    double tone_frequency = 1000.0;    // Hz
    double tone_amplitude = 0.3;
    double thermal_rms = 0.05;
    double impulse_rate = 500.0;       // pulses per second
    double impulse_amplitude = 0.7;
    std::size_t impulse_width = 10;    // samples at the modulator rate
    std::uint64_t seed = 1;

    void validate() const;
};

struct DeltaSigmaExperimentResult {
    bool binary = true;
    double dc_mean = 0.0;
    double dc_error = 0.0;
    /// Mean square of p(a + b) - p(a) - p(b) with the CAF bypassed, and the
    /// reference floor: mean square of p(a) - ideal(a) summed over the three runs.
    double superposition_residual = 0.0;
    double quantization_floor = 0.0;
    /// Decimated impulse-noise energy with the CAF bypassed and enabled.
    double impulse_energy_bypassed = 0.0;
    double impulse_energy_caf = 0.0;
    double impulse_reduction_db = 0.0;
    std::size_t output_samples = 0;
    std::size_t skip = 0;

    Signal clean_output{{}, 1.0};
    Signal bypassed_output{{}, 1.0};
    Signal caf_output{{}, 1.0};
    std::vector<double> bitstream;  // modulator output for the clean input
};

DeltaSigmaExperimentResult run_deltasigma_experiment(const DeltaSigmaExperimentConfig& config);

/// Root-mean-square of a - b over [skip, end).
double rms_difference(const Signal& a, const Signal& b, std::size_t skip = 0);

} // namespace onm
