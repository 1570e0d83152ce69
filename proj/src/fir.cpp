#include "onm/fir.hpp"

#include "onm/iir.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace onm {

namespace {

constexpr double pi = std::numbers::pi;

double sinc(double x)
{
    return x == 0.0 ? 1.0 : std::sin(pi * x) / (pi * x);
}

std::vector<double> kaiser_window(std::size_t n, double beta)
{
    std::vector<double> w(n);
    const double denom = std::cyl_bessel_i(0.0, beta);
    const double m = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = m == 0.0 ? 0.0 : 2.0 * static_cast<double>(i) / m - 1.0;
        w[i] = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / denom;
    }
    return w;
}

// Windowed sinc of odd length n; symmetric by construction.
std::vector<double> windowed_sinc(double cutoff, double rate, std::size_t n, double beta)
{
    const auto w = kaiser_window(n, beta);
    const std::size_t d = (n - 1) / 2;
    const double fc = cutoff / rate;
    std::vector<double> h(n);
    for (std::size_t k = 0; k <= d; ++k) {
        const double v = 2.0 * fc * sinc(2.0 * fc * static_cast<double>(k)) * w[d + k];
        h[d + k] = v;
        h[d - k] = v;
    }
    return h;
}

void require_rate_positive(double rate)
{
    if (!(rate > 0.0)) {
        throw std::invalid_argument("sample rate must be positive");
    }
}

} // namespace

std::complex<double> FirDesign::response(double frequency_hz) const noexcept
{
    const double omega = 2.0 * pi * frequency_hz / rate;
    std::complex<double> h = 0.0;
    for (std::size_t n = 0; n < taps.size(); ++n) {
        h += taps[n] * std::polar(1.0, -omega * static_cast<double>(n));
    }
    return h;
}

bool FirDesign::is_symmetric(double tolerance) const noexcept
{
    const std::size_t n = taps.size();
    if (n == 0 || n % 2 == 0) {
        return false;
    }
    for (std::size_t i = 0; i < n / 2; ++i) {
        if (std::abs(taps[i] - taps[n - 1 - i]) > tolerance) {
            return false;
        }
    }
    return true;
}

double FirDesign::energy() const noexcept
{
    double e = 0.0;
    for (double t : taps) {
        e += t * t;
    }
    return e;
}

double kaiser_beta(double attenuation_db)
{
    if (attenuation_db > 50.0) {
        return 0.1102 * (attenuation_db - 8.7);
    }
    if (attenuation_db >= 21.0) {
        return 0.5842 * std::pow(attenuation_db - 21.0, 0.4) + 0.07886 * (attenuation_db - 21.0);
    }
    return 0.0;
}

std::size_t kaiser_length(double attenuation_db, double transition_hz, double rate)
{
    require_rate_positive(rate);
    if (!(transition_hz > 0.0)) {
        throw std::invalid_argument("transition width must be positive");
    }
    const double dw = 2.0 * pi * transition_hz / rate;
    auto n = static_cast<std::size_t>(std::ceil((attenuation_db - 7.95) / (2.285 * dw))) + 1;
    if (n % 2 == 0) {
        ++n;
    }
    return std::max<std::size_t>(n, 3);
}

FirDesign design_fir_lowpass(double cutoff, double transition_hz, double rate,
                             double attenuation_db)
{
    require_rate_positive(rate);
    if (!(cutoff > 0.0 && cutoff < rate / 2.0)) {
        throw std::invalid_argument("FIR cutoff must lie in (0, rate/2)");
    }
    const std::size_t n = kaiser_length(attenuation_db, transition_hz, rate);
    FirDesign d;
    d.taps = windowed_sinc(cutoff, rate, n, kaiser_beta(attenuation_db));
    d.rate = rate;
    d.group_delay = (n - 1) / 2;
    d.label = "kaiser-lowpass";
    return d;
}

FirDesign design_fir_lowpass_edges(double pass_edge, double stop_edge, double rate,
                                   double attenuation_db)
{
    if (!(pass_edge > 0.0 && stop_edge > pass_edge)) {
        throw std::invalid_argument("lowpass edges must satisfy 0 < pass < stop");
    }
    return design_fir_lowpass(0.5 * (pass_edge + stop_edge), stop_edge - pass_edge, rate,
                              attenuation_db);
}

FirDesign design_fir_bandpass(double lo, double hi, double transition_hz, double rate,
                              double attenuation_db)
{
    require_rate_positive(rate);
    if (!(lo - transition_hz > 0.0 && hi > lo && hi + transition_hz < rate / 2.0)) {
        throw std::invalid_argument("bandpass edges and transitions must fit in (0, rate/2)");
    }
    const std::size_t n = kaiser_length(attenuation_db, transition_hz, rate);
    const double beta = kaiser_beta(attenuation_db);
    const auto upper = windowed_sinc(hi + transition_hz / 2.0, rate, n, beta);
    const auto lower = windowed_sinc(lo - transition_hz / 2.0, rate, n, beta);
    FirDesign d;
    d.taps.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        d.taps[i] = upper[i] - lower[i];
    }
    d.rate = rate;
    d.group_delay = (n - 1) / 2;
    d.label = "kaiser-bandpass";
    return d;
}

FirDesign fir_delay(std::size_t delay, double rate)
{
    require_rate_positive(rate);
    FirDesign d;
    d.taps.assign(2 * delay + 1, 0.0);
    d.taps[delay] = 1.0;
    d.rate = rate;
    d.group_delay = delay;
    d.label = "delay";
    return d;
}

FirDesign design_rrc(double b0, double rolloff, int span_symbols, double rate)
{
    require_rate_positive(rate);
    if (!(rolloff > 0.0 && rolloff <= 1.0)) {
        throw std::invalid_argument("RRC rolloff must lie in (0, 1]");
    }
    if (span_symbols < 8) {
        throw std::invalid_argument("RRC span must be at least 8 symbol periods");
    }
    if (!(b0 > 0.0 && b0 * (1.0 + rolloff) < rate / 2.0)) {
        throw std::invalid_argument("RRC bandwidth must fit below Nyquist");
    }
    const double sps = rate / (2.0 * b0);
    const auto half = static_cast<std::size_t>(std::llround(span_symbols * sps / 2.0));
    const std::size_t n = 2 * half + 1;
    const double a = rolloff;
    FirDesign d;
    d.taps.resize(n);
    for (std::size_t k = 0; k <= half; ++k) {
        const double t = static_cast<double>(k) / sps;  // in symbol periods
        double v;
        if (k == 0) {
            v = 1.0 - a + 4.0 * a / pi;
        } else if (std::abs(4.0 * a * t - 1.0) < 1e-9) {
            v = a / std::sqrt(2.0)
                * ((1.0 + 2.0 / pi) * std::sin(pi / (4.0 * a))
                   + (1.0 - 2.0 / pi) * std::cos(pi / (4.0 * a)));
        } else {
            v = (std::sin(pi * t * (1.0 - a)) + 4.0 * a * t * std::cos(pi * t * (1.0 + a)))
                / (pi * t * (1.0 - 16.0 * a * a * t * t));
        }
        d.taps[half + k] = v;
        d.taps[half - k] = v;
    }
    const double norm = 1.0 / std::sqrt(d.energy());
    for (auto& t : d.taps) {
        t *= norm;
    }
    d.rate = rate;
    d.group_delay = half;
    d.label = "rrc";
    return d;
}

ComplementaryPair make_complement(const FirDesign& band)
{
    if (!band.group_delay || !band.is_symmetric()) {
        throw std::invalid_argument("complement requires a linear-phase (symmetric, odd) band filter");
    }
    const std::size_t d = *band.group_delay;
    if (band.taps.size() != 2 * d + 1) {
        throw std::invalid_argument("band filter group delay inconsistent with its length");
    }
    ComplementaryPair pair;
    pair.band = band;
    pair.complement = band;
    pair.complement.label = band.label + "-complement";
    for (auto& t : pair.complement.taps) {
        t = -t;
    }
    pair.complement.taps[d] += 1.0;
    pair.delay = d;
    return pair;
}

FirDesign convolve(const FirDesign& a, const FirDesign& b)
{
    require_rate(a.rate, b.rate, "FIR convolution");
    FirDesign out;
    out.rate = a.rate;
    out.taps.assign(a.taps.size() + b.taps.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.taps.size(); ++i) {
        for (std::size_t j = 0; j < b.taps.size(); ++j) {
            out.taps[i + j] += a.taps[i] * b.taps[j];
        }
    }
    if (a.group_delay && b.group_delay) {
        out.group_delay = *a.group_delay + *b.group_delay;
        // Symmetrize away rounding so the result stays exactly linear-phase.
        const std::size_t n = out.taps.size();
        for (std::size_t i = 0; i < n / 2; ++i) {
            const double m = 0.5 * (out.taps[i] + out.taps[n - 1 - i]);
            out.taps[i] = m;
            out.taps[n - 1 - i] = m;
        }
    }
    out.label = a.label + "*" + b.label;
    return out;
}

FirDesign excess_band_filter(double band_lo, double band_hi, double excess_extent, double rate)
{
    require_rate_positive(rate);
    if (!(band_lo >= 0.0 && band_hi > band_lo && band_hi < rate / 2.0)) {
        throw std::invalid_argument("signal band must satisfy 0 <= lo < hi < rate/2");
    }
    const double width = band_hi - band_lo;
    if (!(excess_extent > width) || !(excess_extent > band_hi)) {
        throw std::invalid_argument("excess band must extend beyond the signal band");
    }
    const double nyquist = rate / 2.0;
    const double extent = std::min(excess_extent, nyquist);
    double transition = 0.5 * width;
    transition = std::min(transition, 0.5 * (extent - band_hi));
    if (band_lo > 0.0) {
        transition = std::min(transition, 0.9 * band_lo);
    }
    // 66 dB designs leave margin for the 40 dB rejection requirement after cascading.
    constexpr double atten = 66.0;

    FirDesign reject;
    if (band_lo == 0.0) {
        reject = make_complement(
                     design_fir_lowpass_edges(band_hi, band_hi + transition, rate, atten))
                     .complement;
    } else {
        reject = make_complement(design_fir_bandpass(band_lo, band_hi, transition, rate, atten))
                     .complement;
    }
    FirDesign out = reject;
    if (extent < 0.95 * nyquist) {
        const double stop = std::min(extent + 0.25 * (extent - band_hi), nyquist * 0.999);
        out = convolve(reject, design_fir_lowpass_edges(extent, stop, rate, atten));
    }
    out.label = "excess-band";
    return out;
}

FirFilter::FirFilter(FirDesign design)
    : design_(std::move(design)), line_(2 * design_.taps.size(), 0.0),
      symmetric_(design_.is_symmetric())
{
    if (design_.taps.empty()) {
        throw std::invalid_argument("FIR filter needs at least one tap");
    }
}

double FirFilter::process(double x) noexcept
{
    const std::size_t n = design_.taps.size();
    pos_ = pos_ == 0 ? n - 1 : pos_ - 1;
    line_[pos_] = x;
    line_[pos_ + n] = x;
    // window[k] = x[n - k]
    const double* w = line_.data() + pos_;
    const double* h = design_.taps.data();
    double acc = 0.0;
    if (symmetric_) {
        const std::size_t half = n / 2;
        for (std::size_t k = 0; k < half; ++k) {
            acc += h[k] * (w[k] + w[n - 1 - k]);
        }
        acc += h[half] * w[half];
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            acc += h[k] * w[k];
        }
    }
    return acc;
}

void FirFilter::process(std::span<const double> in, std::span<double> out) noexcept
{
    for (std::size_t i = 0; i < in.size(); ++i) {
        out[i] = process(in[i]);
    }
}

Signal FirFilter::apply(const Signal& x)
{
    require_rate(design_.rate, x.sample_rate(), "FIR filter");
    std::vector<double> out(x.size());
    process(x.samples(), out);
    return Signal(std::move(out), x.sample_rate());
}

void FirFilter::reset() noexcept
{
    std::fill(line_.begin(), line_.end(), 0.0);
    pos_ = 0;
}

Decimator::Decimator(FirDesign design, std::size_t factor)
    : design_(std::move(design)), factor_(factor), line_(2 * design_.taps.size(), 0.0)
{
    if (factor_ == 0) {
        throw std::invalid_argument("decimation factor must be positive");
    }
    if (design_.taps.empty()) {
        throw std::invalid_argument("decimation filter needs at least one tap");
    }
}

bool Decimator::push(double x, double& out) noexcept
{
    const std::size_t n = design_.taps.size();
    pos_ = pos_ == 0 ? n - 1 : pos_ - 1;
    line_[pos_] = x;
    line_[pos_ + n] = x;
    if (++phase_ < factor_) {
        return false;
    }
    phase_ = 0;
    const double* w = line_.data() + pos_;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        acc += design_.taps[k] * w[k];
    }
    out = acc;
    return true;
}

Signal Decimator::apply(const Signal& x)
{
    require_rate(design_.rate, x.sample_rate(), "decimator");
    std::vector<double> out;
    out.reserve(x.size() / factor_ + 1);
    double y = 0.0;
    for (double v : x.samples()) {
        if (push(v, y)) {
            out.push_back(y);
        }
    }
    return Signal(std::move(out), x.sample_rate() / static_cast<double>(factor_));
}

} // namespace onm
