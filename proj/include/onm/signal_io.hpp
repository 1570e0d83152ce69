#pragma once

#include "onm/signal.hpp"

#include <iosfwd>
#include <string>

namespace onm {

enum class SignalFormat { csv, binary };

SignalFormat parse_signal_format(const std::string& name);
const char* file_extension(SignalFormat format) noexcept;

/// CSV with header `t,amplitude`, one row per sample, t = n / sample_rate.
void write_csv(std::ostream& out, const Signal& x);
/// Sample rate is recovered from the time column (at least two rows).
Signal read_csv(std::istream& in);

/// Raw little-endian float64 samples after a 16-byte header:
/// 8-byte magic "ONMT0001" followed by the sample rate as float64.
void write_binary(std::ostream& out, const Signal& x);
Signal read_binary(std::istream& in);

void write_signal(const std::string& path, const Signal& x, SignalFormat format);
/// Format is chosen from the file contents (binary magic or CSV header).
Signal read_signal(const std::string& path);

} // namespace onm
