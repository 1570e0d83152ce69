#pragma once

#include "onm/adic.hpp"
#include "onm/fir.hpp"
#include "onm/iir.hpp"
#include "onm/signal.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace onm {

struct CafConfig {
    ComplementaryPair pair;
    AdicParams adic;
    /// Fence floor as a fraction of the interquartile range of the CAF input
    /// over the calibration window. Zero disables the floor.
    double floor_fraction = 0.01;
    bool bypass = false;

    void validate() const;
};

/// Complementary split around a linear-phase lowpass with the given passband
/// and stopband edges; ADiC time constant `tau` in seconds.
CafConfig make_lowpass_caf(double pass_edge, double stop_edge, double rate, double tau,
                           double attenuation_db = 60.0);

/// Default baseband configuration for a signal of half-power bandwidth b0:
/// passband edge 1.25 b0, stopband edge 1.65 b0, tau = 0.5 / (2 pi 1.2 b0),
/// fence scale beta = 6.
CafConfig default_baseband_caf(double b0, double rate);

/// Per-sample tap points of a CAF.
struct CafTaps {
    double input, band, excess, adic, output;
};

/// output = band(x) + ADiC(complement(x)). With the ADiC bypassed the output
/// is the input delayed by the band filter's group delay.
class Caf {
public:
    explicit Caf(CafConfig config);

    double process(double x);
    Signal apply(const Signal& x, std::vector<CafTaps>* taps = nullptr);

    std::size_t delay() const noexcept { return delay_; }
    /// Samples after which the ADiC may clip.
    std::size_t warmup() const noexcept;
    void set_bypass(bool bypass) noexcept { adic_.set_bypass(bypass); }
    bool bypassed() const noexcept { return adic_.bypassed(); }

    const FeedbackAdic& adic() const noexcept { return adic_; }
    const CafConfig& config() const noexcept { return config_; }
    double rate() const noexcept { return config_.pair.band.rate; }

private:
    CafConfig config_;
    FirFilter band_;
    std::size_t delay_;
    std::vector<double> line_;  // input delay line of length delay + 1
    std::size_t pos_ = 0;
    FeedbackAdic adic_;
    std::vector<double> floor_window_;
    std::size_t n_ = 0;
    double last_band_ = 0.0;
    double last_excess_ = 0.0;
    double last_adic_ = 0.0;
};

/// Header `n,input,band,excess,adic,output`.
void write_caf_taps_csv(std::ostream& out, const std::vector<CafTaps>& rows);

struct DerivativeChainConfig {
    CafConfig caf;
    double leak_frequency = 0.0;       // Hz; leak = 1 - 2 pi f_leak dt
    IirDesign bandpass;
    double reference_frequency = 0.0;  // Hz; unit-gain calibration point
};

/// bandpass(g * leaky_integrate(CAF(first_difference(x)))), with g chosen so
/// a tone at the reference frequency passes at unit gain.
class DerivativeChain {
public:
    explicit DerivativeChain(DerivativeChainConfig config);

    double process(double x);
    Signal apply(const Signal& x);

    double leak() const noexcept { return leak_; }
    double gain() const noexcept { return gain_; }
    void set_bypass(bool bypass) noexcept { caf_.set_bypass(bypass); }
    const Caf& caf() const noexcept { return caf_; }

private:
    Caf caf_;
    IirFilter bandpass_;
    double leak_;
    double gain_;
    double prev_ = 0.0;
    double integ_ = 0.0;
};

/// CAF(bandstop(x)).
class BandstopChain {
public:
    BandstopChain(IirDesign bandstop, CafConfig caf);

    double process(double x);
    Signal apply(const Signal& x);
    void set_bypass(bool bypass) noexcept { caf_.set_bypass(bypass); }
    const Caf& caf() const noexcept { return caf_; }

private:
    IirFilter bandstop_;
    Caf caf_;
};

/// Feedback ADiC applied directly to the signal+noise mixture.
Signal shared_band_process(const AdicParams& params, const Signal& x);

} // namespace onm
