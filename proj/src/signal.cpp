#include "onm/signal.hpp"

#include "onm/error.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>
#include <string>

namespace onm {

namespace {

std::mutex g_warn_mutex;
WarningHandler g_warn_handler;

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

void require_compatible(const Signal& a, const Signal& b)
{
    if (a.sample_rate() != b.sample_rate()) {
        throw std::invalid_argument("signal sample rates differ");
    }
    if (a.size() != b.size()) {
        throw std::invalid_argument("signal lengths differ");
    }
}

} // namespace

void set_warning_handler(WarningHandler handler)
{
    std::lock_guard lock(g_warn_mutex);
    g_warn_handler = std::move(handler);
}

void warn(const std::string& message)
{
    std::lock_guard lock(g_warn_mutex);
    if (g_warn_handler) {
        g_warn_handler(message);
    } else {
        std::cerr << "warning: " << message << '\n';
    }
}

Signal::Signal(std::vector<double> samples, double sample_rate)
    : samples_(std::move(samples)), rate_(sample_rate)
{
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
        throw std::invalid_argument("sample rate must be positive and finite");
    }
    const auto bad = std::find_if(samples_.begin(), samples_.end(),
                                  [](double v) { return !std::isfinite(v); });
    if (bad != samples_.end()) {
        throw std::invalid_argument("non-finite sample at index "
                                    + std::to_string(bad - samples_.begin()));
    }
}

Signal Signal::slice(std::size_t first, std::size_t count) const
{
    first = std::min(first, samples_.size());
    count = std::min(count, samples_.size() - first);
    return Signal({samples_.begin() + static_cast<std::ptrdiff_t>(first),
                   samples_.begin() + static_cast<std::ptrdiff_t>(first + count)},
                  rate_);
}

Signal operator+(const Signal& a, const Signal& b)
{
    require_compatible(a, b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a[i] + b[i];
    }
    return Signal(std::move(out), a.sample_rate());
}

Signal operator-(const Signal& a, const Signal& b)
{
    require_compatible(a, b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a[i] - b[i];
    }
    return Signal(std::move(out), a.sample_rate());
}

Signal scaled(const Signal& x, double gain)
{
    std::vector<double> out(x.values());
    for (auto& v : out) {
        v *= gain;
    }
    return Signal(std::move(out), x.sample_rate());
}

RngSeed derive_seed(RngSeed base, std::uint64_t stream, std::uint64_t index) noexcept
{
    std::uint64_t s = splitmix64(base.value);
    s = splitmix64(s ^ (stream * 0xD1B54A32D192ED03ull));
    s = splitmix64(s ^ (index * 0x8CB92BA72F3D8DD7ull));
    return RngSeed{s};
}

std::size_t sample_count(double duration, double rate)
{
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw std::invalid_argument("duration must be positive");
    }
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw std::invalid_argument("sample rate must be positive");
    }
    return static_cast<std::size_t>(std::llround(duration * rate));
}

} // namespace onm
