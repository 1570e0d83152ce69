#pragma once

#include "onm/fir.hpp"
#include "onm/iir.hpp"
#include "onm/signal.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace onm {

/// Shannon limit per unit bandwidth, log2(1 + 10^(snr_db/10)). -inf dB gives 0.
double capacity(double snr_db) noexcept;

inline constexpr double snr_cap_db = 100.0;

struct SnrResult {
    double snr_db = 0.0;
    bool capped = false;  // error power zero or below the cap
    double signal_power = 0.0;
    double error_power = 0.0;
};

/// power(reference) / power(output - reference) over samples [skip, end).
SnrResult measure_snr(std::span<const double> reference, std::span<const double> output,
                      std::size_t skip = 0);

/// Pileup threshold of a lowpass front end. The time-bandwidth product is
/// the -6 dB (half-amplitude) bandwidth times the full width at half maximum
/// of the impulse response (band-limited interpolation); for a Gaussian this
/// is 2 ln 2 / pi. lambda_c = frontend_bandwidth / time_bandwidth_product,
/// with frontend_bandwidth the -3 dB bandwidth.
struct PileupParams {
    double frontend_bandwidth = 0.0;      // Hz, -3 dB
    double half_amplitude_bandwidth = 0.0;  // Hz, -6 dB
    double impulse_fwhm = 0.0;            // seconds
    double time_bandwidth_product = 0.0;
    double lambda_c = 0.0;                // Hz
};

/// Throws std::invalid_argument for anything but a lowpass design.
PileupParams pileup_threshold(const IirDesign& frontend);
/// FIR front ends must have a lowpass magnitude (|H(rate/2)| < |H(0)| / 2).
PileupParams pileup_threshold(const FirDesign& frontend);

/// One-sided power spectral density; sum(density) * df equals the mean square.
struct Psd {
    std::vector<double> frequency;
    std::vector<double> density;
    double df = 0.0;

    double total_power() const noexcept;
};

/// Welch estimate: Hann window, 50% overlap, averaged periodograms.
/// Throws std::invalid_argument if the signal is shorter than one segment.
Psd welch_psd(const Signal& x, std::size_t segment_length);
Psd welch_psd(std::span<const double> x, double rate, std::size_t segment_length);

struct MetricsReport {
    std::string chain;
    double baseband_snr_db = 0.0;
    bool snr_capped = false;
    std::optional<double> peakedness_dbg;
    /// Shannon formula applied to the measured SNR: a proxy, exact only for
    /// Gaussian residuals.
    double capacity_bits_per_s_per_hz = 0.0;
    double clip_fraction = 0.0;
    Psd psd;

    nlohmann::json to_json() const;
};

MetricsReport make_report(std::string chain, const SnrResult& snr, double clip_fraction,
                          std::optional<double> peakedness = std::nullopt);

std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& report);

/// printf-style "%.17g" for CSV output.
std::string format_number(double v);

} // namespace onm
