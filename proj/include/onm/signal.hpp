#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace onm {

/// Uniformly sampled real-valued signal. Samples are validated finite on
/// construction and never mutated afterwards.
class Signal {
public:
    Signal(std::vector<double> samples, double sample_rate);

    std::span<const double> samples() const noexcept { return samples_; }
    const std::vector<double>& values() const noexcept { return samples_; }
    double sample_rate() const noexcept { return rate_; }
    double dt() const noexcept { return 1.0 / rate_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    double duration() const noexcept { return static_cast<double>(samples_.size()) / rate_; }
    double operator[](std::size_t i) const noexcept { return samples_[i]; }

    /// Sub-range [first, first + count), clamped to the signal length.
    Signal slice(std::size_t first, std::size_t count) const;

private:
    std::vector<double> samples_;
    double rate_;
};

/// Elementwise a + b. Rates and lengths must match.
Signal operator+(const Signal& a, const Signal& b);
/// Elementwise a - b. Rates and lengths must match.
Signal operator-(const Signal& a, const Signal& b);
Signal scaled(const Signal& x, double gain);

/// Seed for every random generator in the library.
struct RngSeed {
    std::uint64_t value = 0;
};

/// Independent sub-seed for (stream, index), e.g. one noise component of one sweep point.
RngSeed derive_seed(RngSeed base, std::uint64_t stream, std::uint64_t index = 0) noexcept;

/// Number of samples covering `duration` seconds at `rate` Hz (rounded).
std::size_t sample_count(double duration, double rate);

} // namespace onm
