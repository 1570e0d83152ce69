#pragma once

#include "onm/caf.hpp"
#include "onm/fir.hpp"
#include "onm/iir.hpp"
#include "onm/signal.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace onm {

/// Second-order single-bit modulator, cascade of integrators with unity
/// feedback. The second integrator sees the updated first one, which gives
/// NTF = (1 - z^-1)^2 and STF = 1. The input is clipped to +-clip_level.
class DeltaSigmaModulator {
public:
    explicit DeltaSigmaModulator(double clip_level = 0.8);

    /// Returns -1 or +1.
    int step(double x) noexcept;
    /// Bitstream as a +-1 signal at the input rate.
    Signal modulate(const Signal& x);
    void reset() noexcept;

    double clip_level() const noexcept { return clip_; }
    double integrator1() const noexcept { return i1_; }
    double integrator2() const noexcept { return i2_; }

private:
    double clip_;
    double i1_ = 0.0;
    double i2_ = 0.0;
    double v_ = 0.0;
};

/// Packs a +-1 bitstream one bit per sample, LSB first; +1 maps to bit 1.
std::vector<std::uint8_t> pack_bits(std::span<const double> bitstream);
std::vector<double> unpack_bits(std::span<const std::uint8_t> packed, std::size_t count);

/// Splits a Bessel-Thomson lowpass of order analog_order + digital_order into
/// two cascaded factors built from the quadratic factors of the Bessel
/// polynomial. The first factor takes the most damped pole pairs. Both are
/// realized digitally at `rate`; their product equals the direct design.
std::pair<IirDesign, IirDesign> codesign_frontend(int analog_order, int digital_order,
                                                  double cutoff, double rate);

struct PipelineConfig {
    double modulator_rate = 2.0e6;
    double output_rate = 1.0e4;
    double clip_level = 0.8;
    double wideband_cutoff = 5.0e4;
    IirFamily wideband_family = IirFamily::bessel;
    /// CAF passband edge (default 0.8 of the output Nyquist) and transition
    /// width (default equal to the edge).
    double band_edge = 0.0;
    double caf_transition = 0.0;
    double tau = 0.0;            // seconds; 0 selects 10 / (2 pi band_edge)
    FenceParams fences{};
    double floor_fraction = 0.01;
    /// Decimation filter: passband edge at 0.8 and stopband at 1.2 of the
    /// output Nyquist when left at zero.
    double decimation_pass = 0.0;
    double decimation_stop = 0.0;
    double decimation_attenuation = 80.0;
    bool bypass_caf = false;

    /// Throws std::invalid_argument; the rate ratio must be an integer.
    std::size_t decimation() const;
    void validate() const;
};

/// Intermediate signals kept by DeltaSigmaPipeline::process when requested.
struct PipelineProbes {
    std::vector<double> bitstream;
    std::vector<double> wideband;
    std::vector<double> caf;
};

/// decimate(baseband(CAF(wideband(dsm(x))))). The decimation filter is the
/// baseband filter and is evaluated at the output rate only.
class DeltaSigmaPipeline {
public:
    explicit DeltaSigmaPipeline(PipelineConfig config);

    Signal process(const Signal& x, PipelineProbes* probes = nullptr);

    const PipelineConfig& config() const noexcept { return config_; }
    const IirDesign& wideband_design() const noexcept { return wideband_; }
    const Caf& caf() const noexcept { return caf_; }
    const Decimator& decimator() const noexcept { return decimator_; }

private:
    PipelineConfig config_;
    DeltaSigmaModulator dsm_;
    IirDesign wideband_;
    IirFilter wideband_filter_;
    Caf caf_;
    Decimator decimator_;
};

CafConfig pipeline_caf_config(const PipelineConfig& config);

} // namespace onm
