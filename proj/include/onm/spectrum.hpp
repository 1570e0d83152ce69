#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace onm {

/// Real-to-complex DFT of `x` zero-padded (or truncated) to `n` points.
/// Returns n/2 + 1 bins.
std::vector<std::complex<double>> rfft(std::span<const double> x, std::size_t n);

/// Inverse of rfft for an n-point real sequence (scaled by 1/n).
std::vector<double> irfft(std::span<const std::complex<double>> bins, std::size_t n);

} // namespace onm
