#pragma once

#include "onm/signal.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace onm {

enum class IirFamily { butterworth, bessel, custom };
enum class FilterKind { lowpass, highpass, bandpass, bandstop };

const char* to_string(IirFamily family) noexcept;
const char* to_string(FilterKind kind) noexcept;
IirFamily parse_iir_family(const std::string& name);
FilterKind parse_filter_kind(const std::string& name);

/// Second-order section with a0 normalized to 1:
///   H(z) = (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2).
/// First-order sections have b2 = a2 = 0.
struct Biquad {
    double b0 = 1.0, b1 = 0.0, b2 = 0.0;
    double a1 = 0.0, a2 = 0.0;

    std::complex<double> response(double omega) const noexcept;
    /// Group delay in samples at normalized angular frequency omega.
    double group_delay(double omega) const noexcept;
    /// Roots of 1 + a1 z^-1 + a2 z^-2 (one root for first-order sections).
    std::vector<std::complex<double>> poles() const;
};

/// Cascade-of-sections IIR design at a fixed sample rate.
struct IirDesign {
    IirFamily family = IirFamily::custom;
    FilterKind kind = FilterKind::lowpass;
    int order = 0;
    std::vector<double> cutoffs;  // Hz; one for low/highpass, two for band filters
    double rate = 0.0;            // Hz
    std::vector<Biquad> sections;
    std::string label;

    std::complex<double> response(double frequency_hz) const noexcept;
    double magnitude(double frequency_hz) const noexcept { return std::abs(response(frequency_hz)); }
    double magnitude_db(double frequency_hz) const noexcept;
    /// Group delay in seconds.
    double group_delay(double frequency_hz) const noexcept;
    std::vector<std::complex<double>> poles() const;
    bool is_stable() const;
};

/// Bilinear-transform design of a Butterworth or Bessel filter. Cutoffs are
/// pre-warped so the analog -3 dB points land exactly on the requested
/// frequencies. Band filters have 2*order poles.
IirDesign design_iir(IirFamily family, FilterKind kind, int order,
                     std::vector<double> cutoffs, double rate);

/// Poles of the analog Bessel-Thomson prototype normalized to a -3 dB
/// corner at 1 rad/s.
std::vector<std::complex<double>> bessel_prototype_poles(int order);
/// Poles of the analog Butterworth prototype (-3 dB at 1 rad/s).
std::vector<std::complex<double>> butterworth_prototype_poles(int order);

/// Lowpass section realizing the given analog prototype poles scaled to
/// `cutoff` (pre-warped bilinear transform), with unit DC gain.
IirDesign lowpass_from_prototype(std::span<const std::complex<double>> prototype_poles,
                                 double cutoff, double rate, IirFamily family,
                                 std::string label = {});

/// Streaming IIR filter (transposed direct form II per section).
/// Single-stream mutable state; not safe for concurrent use.
class IirFilter {
public:
    explicit IirFilter(IirDesign design);

    double process(double x) noexcept;
    void process(std::span<const double> in, std::span<double> out) noexcept;
    /// One-shot filtering continuing from the current state.
    Signal apply(const Signal& x);
    void reset() noexcept;
    const IirDesign& design() const noexcept { return design_; }

private:
    IirDesign design_;
    std::vector<double> s1_, s2_;
};

/// Cascade several designs into one (sections appended in order).
IirDesign cascade(const std::vector<IirDesign>& designs);

/// Throws std::invalid_argument unless `rate` matches the design rate.
void require_rate(double design_rate, double signal_rate, const char* what);

} // namespace onm
