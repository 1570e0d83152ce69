#pragma once

#include "onm/signal.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace onm {

/// FIR design. Linear-phase designs carry their integer group delay.
struct FirDesign {
    std::vector<double> taps;
    double rate = 0.0;
    std::optional<std::size_t> group_delay;  // samples; set for linear-phase designs
    std::string label;

    std::complex<double> response(double frequency_hz) const noexcept;
    double magnitude(double frequency_hz) const noexcept { return std::abs(response(frequency_hz)); }
    /// Odd length with taps[n] == taps[N-1-n] to within `tolerance`.
    bool is_symmetric(double tolerance = 1e-15) const noexcept;
    double energy() const noexcept;
};

/// Band filter and its spectral complement: band + complement = delta[n - D].
struct ComplementaryPair {
    FirDesign band;
    FirDesign complement;
    std::size_t delay = 0;
};

/// Kaiser window shape parameter for a stopband attenuation in dB.
double kaiser_beta(double attenuation_db);
/// Odd Kaiser-window FIR length for the given attenuation and transition width.
std::size_t kaiser_length(double attenuation_db, double transition_hz, double rate);

/// Windowed-sinc lowpass; `cutoff` is the -6 dB point, the transition band is
/// centered on it.
FirDesign design_fir_lowpass(double cutoff, double transition_hz, double rate,
                             double attenuation_db = 60.0);
/// Windowed-sinc lowpass from passband and stopband edges.
FirDesign design_fir_lowpass_edges(double pass_edge, double stop_edge, double rate,
                                   double attenuation_db = 60.0);
/// Bandpass with passband [lo, hi] and transitions of `transition_hz` outside it.
FirDesign design_fir_bandpass(double lo, double hi, double transition_hz, double rate,
                              double attenuation_db = 60.0);
/// Unit impulse delayed by `delay` samples (length 2*delay+1).
FirDesign fir_delay(std::size_t delay, double rate);

/// Root-raised-cosine pulse. Symbol rate is 2*B0, so the half-power
/// bandwidth of the response is B0. Taps have unit energy.
FirDesign design_rrc(double b0, double rolloff, int span_symbols, double rate);

/// Spectral inversion: complement[n] = delta[n - D] - band[n].
ComplementaryPair make_complement(const FirDesign& band);

/// Convolution of two designs (linear phase is preserved).
FirDesign convolve(const FirDesign& a, const FirDesign& b);

/// Lowpass/highpass (baseband) or bandpass/bandstop (passband) cascade that
/// rejects the signal band by at least 40 dB and passes the excess band up
/// to `excess_extent`.
FirDesign excess_band_filter(double band_lo, double band_hi, double excess_extent, double rate);

/// Streaming FIR filter. Output for any chunking of the input is bit-identical
/// to one-shot filtering. Single-stream mutable state.
class FirFilter {
public:
    explicit FirFilter(FirDesign design);

    double process(double x) noexcept;
    void process(std::span<const double> in, std::span<double> out) noexcept;
    Signal apply(const Signal& x);
    void reset() noexcept;
    const FirDesign& design() const noexcept { return design_; }

private:
    FirDesign design_;
    std::vector<double> line_;  // doubled delay line, newest sample at pos_ and pos_ + N
    std::size_t pos_ = 0;
    bool symmetric_ = false;
};

/// FIR filter evaluated only at every `factor`-th input sample.
class Decimator {
public:
    Decimator(FirDesign design, std::size_t factor);

    /// Push one input sample; returns true and sets `out` when an output is due.
    bool push(double x, double& out) noexcept;
    /// Output length is floor(input length / factor) for a fresh decimator.
    Signal apply(const Signal& x);
    std::size_t factor() const noexcept { return factor_; }
    const FirDesign& design() const noexcept { return design_; }

private:
    FirDesign design_;
    std::size_t factor_;
    std::vector<double> line_;
    std::size_t pos_ = 0;
    std::size_t phase_ = 0;
};

} // namespace onm
