#include "onm/stats.hpp"

#include "onm/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace onm {

double mean(std::span<const double> x)
{
    if (x.empty()) {
        throw std::invalid_argument("mean of an empty sequence");
    }
    double s = 0.0;
    for (double v : x) {
        s += v;
    }
    return s / static_cast<double>(x.size());
}

double mean_square(std::span<const double> x)
{
    if (x.empty()) {
        throw std::invalid_argument("mean square of an empty sequence");
    }
    double s = 0.0;
    for (double v : x) {
        s += v * v;
    }
    return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x)
{
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) {
        s += (v - m) * (v - m);
    }
    return s / static_cast<double>(x.size());
}

double rms(std::span<const double> x)
{
    return std::sqrt(mean_square(x));
}

double exact_quantile(std::span<const double> x, double q)
{
    if (x.empty()) {
        throw std::invalid_argument("quantile of an empty sequence");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("quantile level must lie in [0, 1]");
    }
    std::vector<double> v(x.begin(), x.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo), v.end());
    const double a = v[lo];
    if (frac == 0.0 || lo + 1 >= v.size()) {
        return a;
    }
    const double b = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo) + 1, v.end());
    return a + frac * (b - a);
}

double peakedness_dbg(std::span<const double> x)
{
    if (x.size() < 100) {
        throw UndefinedStatistic("peakedness needs at least 100 samples");
    }
    const double m = mean(x);
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : x) {
        const double d = (v - m) * (v - m);
        m2 += d;
        m4 += d * d;
    }
    const double n = static_cast<double>(x.size());
    m2 /= n;
    m4 /= n;
    if (!(m2 > 0.0)) {
        throw UndefinedStatistic("peakedness is undefined for zero variance");
    }
    return 10.0 * std::log10(m4 / (3.0 * m2 * m2));
}

double peakedness_dbg(const Signal& x)
{
    return peakedness_dbg(x.samples());
}

namespace {

struct WindowStats {
    double median;
    double mad;
};

WindowStats window_stats(std::span<const double> w, std::vector<double>& scratch)
{
    scratch.assign(w.begin(), w.end());
    const double med = exact_quantile(scratch, 0.5);
    for (auto& v : scratch) {
        v = std::abs(v - med);
    }
    return {med, exact_quantile(scratch, 0.5)};
}

void check_window(const Signal& x, std::size_t window)
{
    if (window < 3 || window % 2 == 0) {
        throw std::invalid_argument("Hampel window must be odd and at least 3");
    }
    if (window > x.size()) {
        throw std::invalid_argument("Hampel window longer than the signal");
    }
}

template <class F>
void hampel_scan(const Signal& x, std::size_t window, double scale, F&& on_sample)
{
    check_window(x, window);
    const std::size_t half = window / 2;
    const std::size_t n = x.size();
    const auto s = x.samples();
    std::vector<double> scratch;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = i >= half ? i - half : 0;
        const std::size_t b = std::min(n, i + half + 1);
        const auto st = window_stats(s.subspan(a, b - a), scratch);
        const bool outlier = std::abs(s[i] - st.median) > scale * 1.4826 * st.mad;
        on_sample(i, outlier, st.median);
    }
}

} // namespace

Signal hampel_oracle(const Signal& x, std::size_t window, double scale)
{
    std::vector<double> out(x.values());
    hampel_scan(x, window, scale, [&](std::size_t i, bool outlier, double med) {
        if (outlier) {
            out[i] = med;
        }
    });
    return Signal(std::move(out), x.sample_rate());
}

std::vector<bool> hampel_flags(const Signal& x, std::size_t window, double scale)
{
    std::vector<bool> flags(x.size(), false);
    hampel_scan(x, window, scale,
                [&](std::size_t i, bool outlier, double) { flags[i] = outlier; });
    return flags;
}

} // namespace onm
