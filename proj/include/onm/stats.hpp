#pragma once

#include "onm/signal.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace onm {

double mean(std::span<const double> x);
/// Mean of squares.
double mean_square(std::span<const double> x);
/// Population variance.
double variance(std::span<const double> x);
double rms(std::span<const double> x);

/// Sample quantile with linear interpolation between order statistics
/// (position q*(n-1)). Throws std::invalid_argument on empty input.
double exact_quantile(std::span<const double> x, double q);

/// Kurtosis relative to Gaussian in dB:
///   10 log10( <(x-<x>)^4> / (3 <(x-<x>)^2>^2) ).
/// Throws UndefinedStatistic for zero variance or fewer than 100 samples.
double peakedness_dbg(std::span<const double> x);
double peakedness_dbg(const Signal& x);

/// Windowed-median outlier replacement. A sample is an outlier when
/// |x - median| > scale * 1.4826 * MAD over the centered window (truncated at
/// the edges); outliers are replaced by the window median.
Signal hampel_oracle(const Signal& x, std::size_t window, double scale);
/// Outlier flags of the same rule.
std::vector<bool> hampel_flags(const Signal& x, std::size_t window, double scale);

} // namespace onm
