#pragma once

#include "onm/signal.hpp"

#include <string>

namespace onm {

enum class NoiseKind { thermal_gaussian, poisson_impulses, periodic_gaussian_bursts };

const char* to_string(NoiseKind kind) noexcept;
NoiseKind parse_noise_kind(const std::string& name);

/// Declarative noise component.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::thermal_gaussian;
    double rate = 0.0;          // Poisson arrivals per second
    double burst_period = 0.0;  // seconds
    double duty_cycle = 1.0;    // (0, 1]
    double power = 1.0;         // mean square (thermal, in-burst); amplitude variance (poisson)

    /// Throws std::invalid_argument on violated invariants.
    void validate() const;
};

Signal generate_thermal(double duration, double power, double rate, RngSeed seed);

/// Poisson arrivals with N(0, amp_std^2) areas. Each arrival adds area/dt to
/// the sample containing it; coincident arrivals are summed.
Signal generate_poisson_impulses(double duration, double lambda, double amp_std, double rate,
                                 RngSeed seed);

/// Gaussian noise of `power_in_burst` inside windows of width duty*period,
/// zero elsewhere. The first burst starts at t = phase.
Signal generate_bursts(double duration, double burst_period, double duty, double power_in_burst,
                       double rate, RngSeed seed, double phase = 0.0);

/// amplitude * cos(2*pi*(t - delay)/period).
Signal generate_tone(double period, double amplitude, double rate, double duration,
                     double delay = 0.0);
/// +amplitude for the first half of each period, -amplitude for the second.
Signal generate_square(double period, double amplitude, double rate, double duration,
                       double delay = 0.0);
/// Triangle wave between -amplitude and +amplitude, peak at t = delay.
Signal generate_triangle(double period, double amplitude, double rate, double duration,
                         double delay = 0.0);
/// One impulse of the given area per period (sample value area/dt) at t = delay + k*period.
Signal generate_impulse_train(double period, double area, double rate, double duration,
                              double delay = 0.0);

/// White Gaussian noise shaped by an RRC filter of half-power bandwidth b0,
/// normalized to unit mean square. The output is stationary from t = 0.
Signal generate_rrc_signal(double b0, double duration, double rate, RngSeed seed,
                           double rolloff = 0.25, int span_symbols = 32);

/// Dispatch on a NoiseSpec.
Signal generate_noise(const NoiseSpec& spec, double duration, double rate, RngSeed seed);

} // namespace onm
