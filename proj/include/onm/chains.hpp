#pragma once

#include "onm/caf.hpp"
#include "onm/fir.hpp"
#include "onm/iir.hpp"
#include "onm/metrics.hpp"
#include "onm/qtf.hpp"
#include "onm/signal.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace onm {

enum class ChainKind { linear, caf, derivative_caf, bandstop_caf, shared_band_adic, deltasigma };

const char* to_string(ChainKind kind) noexcept;
ChainKind parse_chain_kind(const std::string& name);

/// Baseband link used by the SNR experiments:
///   front end (lowpass at frontend_factor * b0) -> [bandstop] -> nonlinear
///   stage -> matched RRC filter.
/// The signal of interest is RRC-shaped noise of half-power bandwidth b0.
struct WidebandSetup {
    double b0 = 1000.0;
    double rate = 64000.0;
    double rrc_rolloff = 0.25;
    int rrc_span = 32;

    IirFamily frontend_family = IirFamily::bessel;
    int frontend_order = 2;
    double frontend_factor = 10.0;

    // CAF band split and ADiC (the default parameter set).
    double band_pass_factor = 1.25;
    double band_stop_factor = 1.65;
    double band_attenuation = 60.0;
    double tau_scale = 0.5;  // tau = tau_scale / (2 pi 1.2 b0)
    FenceParams fences{.beta = 6.0};
    double floor_fraction = 0.01;

    // Bandstop ahead of the CAF (adjacent-channel variant).
    double bandstop_lo_factor = 2.5;
    double bandstop_hi_factor = 5.5;
    int bandstop_order = 4;

    // ADiC directly ahead of the matched filter (shared-band variant).
    double shared_tau_scale = 10.0;  // tau = shared_tau_scale / (2 pi b0)
    FenceParams shared_fences{};

    void validate() const;

    IirDesign frontend() const;
    IirDesign bandstop() const;
    FirDesign matched_filter() const;
    CafConfig caf_config() const;
    AdicParams shared_adic_params() const;
    /// Pileup threshold of the front end.
    double lambda_c() const;
};

struct ChainRun {
    Signal output;
    double clip_fraction = 0.0;  // clipped samples / samples after the ADiC warm-up
};

/// Runs a fresh chain over `x`. With `bypass` the nonlinear stage passes its
/// input unchanged, giving the chain's linear twin.
ChainRun run_chain(const WidebandSetup& setup, ChainKind kind, bool bypass, const Signal& x);

/// Samples excluded from measurements: four times the summed group delays
/// plus the ADiC warm-up.
std::size_t chain_warmup(const WidebandSetup& setup, ChainKind kind);

/// Clean signal, noise and the paired reference for one SNR measurement.
struct SnrMeasurement {
    MetricsReport linear_twin;
    MetricsReport nonlinear;
    double gain_db = 0.0;
    std::size_t skip = 0;               // samples excluded from the measurement
    Signal reference{{}, 1.0};          // clean signal through the bypassed chain
    Signal linear_output{{}, 1.0};      // noisy input through the linear twin
    Signal nonlinear_output{{}, 1.0};
};

/// Baseband SNR of `kind` and of its linear twin. The reference is the clean
/// signal through the twin, so both share delays and linear distortion.
SnrMeasurement measure_chain(const WidebandSetup& setup, ChainKind kind, const Signal& clean,
                             const Signal& noise, bool with_peakedness = false);

/// Mean square of `x` after the plain linear chain, over the measurement window.
double baseband_power(const WidebandSetup& setup, const Signal& x);

/// Adjacent-channel interferer: RRC-shaped noise of half-power bandwidth
/// bandwidth_factor * b0 shifted to center_factor * b0, with mean square 1.
Signal adjacent_channel_noise(const WidebandSetup& setup, double center_factor,
                              double bandwidth_factor, double duration, RngSeed seed);

/// Poisson impulses with N(0, 1) areas confined to the signal band by a
/// linear-phase lowpass with passband edge b0 and stopband edge 1.25 b0.
Signal narrowband_poisson_noise(const WidebandSetup& setup, double lambda, double duration,
                                RngSeed seed);

} // namespace onm
