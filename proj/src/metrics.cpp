#include "onm/metrics.hpp"

#include "onm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace onm {

namespace {

constexpr double pi = std::numbers::pi;
constexpr std::size_t interp_factor = 256;

template <class Mag>
double crossing(Mag&& mag, double level, double nyquist)
{
    // First frequency where the magnitude falls to `level`, by scan + bisection.
    constexpr int grid = 4096;
    double prev = 0.0;
    for (int i = 1; i <= grid; ++i) {
        const double f = nyquist * i / grid;
        if (mag(f) <= level) {
            double lo = prev, hi = f;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                (mag(mid) > level ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev = f;
    }
    throw std::invalid_argument("front end does not roll off below the requested level");
}

std::size_t next_pow2(std::size_t n)
{
    std::size_t p = 1;
    while (p < n) {
        p <<= 1;
    }
    return p;
}

double impulse_fwhm(const std::vector<double>& h, double rate)
{
    const std::size_t n = next_pow2(2 * h.size());
    auto bins = rfft(h, n);
    const std::size_t m = n * interp_factor;
    bins.resize(m / 2 + 1, {0.0, 0.0});
    // Keep the Nyquist bin's energy split symmetric in the longer transform.
    bins[n / 2] *= 0.5;
    const auto hi = irfft(bins, m);
    const auto peak_it = std::max_element(hi.begin(), hi.end());
    const double half = 0.5 * *peak_it;
    const auto peak = static_cast<std::size_t>(peak_it - hi.begin());
    std::size_t l = peak;
    while (l > 0 && hi[l - 1] >= half) {
        --l;
    }
    std::size_t r = peak;
    while (r + 1 < m && hi[r + 1] >= half) {
        ++r;
    }
    if (l == 0 || r + 1 >= m) {
        throw std::invalid_argument("impulse response has no isolated main lobe");
    }
    const double left = static_cast<double>(l - 1) + (half - hi[l - 1]) / (hi[l] - hi[l - 1]);
    const double right = static_cast<double>(r) + (hi[r] - half) / (hi[r] - hi[r + 1]);
    return (right - left) / (rate * static_cast<double>(interp_factor));
}

template <class Mag>
PileupParams pileup_from(Mag&& mag, const std::vector<double>& h, double rate)
{
    const double dc = mag(0.0);
    if (!(dc > 0.0) || !(mag(rate / 2.0) < 0.5 * dc)) {
        throw std::invalid_argument("pileup threshold requires a lowpass front end");
    }
    PileupParams p;
    p.frontend_bandwidth = crossing(mag, dc / std::sqrt(2.0), rate / 2.0);
    p.half_amplitude_bandwidth = crossing(mag, dc / 2.0, rate / 2.0);
    p.impulse_fwhm = impulse_fwhm(h, rate);
    p.time_bandwidth_product = p.half_amplitude_bandwidth * p.impulse_fwhm;
    p.lambda_c = p.frontend_bandwidth / p.time_bandwidth_product;
    return p;
}

} // namespace

double capacity(double snr_db) noexcept
{
    if (std::isinf(snr_db) && snr_db < 0.0) {
        return 0.0;
    }
    return std::log2(1.0 + std::pow(10.0, snr_db / 10.0));
}

SnrResult measure_snr(std::span<const double> reference, std::span<const double> output,
                      std::size_t skip)
{
    if (reference.size() != output.size()) {
        throw std::invalid_argument("reference and output lengths differ");
    }
    if (skip >= reference.size()) {
        throw std::invalid_argument("measurement window is empty");
    }
    double ps = 0.0, pe = 0.0;
    for (std::size_t i = skip; i < reference.size(); ++i) {
        const double e = output[i] - reference[i];
        ps += reference[i] * reference[i];
        pe += e * e;
    }
    const double n = static_cast<double>(reference.size() - skip);
    SnrResult r;
    r.signal_power = ps / n;
    r.error_power = pe / n;
    if (!(r.signal_power > 0.0)) {
        throw std::invalid_argument("reference signal has zero power");
    }
    const double snr = r.error_power > 0.0 ? 10.0 * std::log10(r.signal_power / r.error_power)
                                           : std::numeric_limits<double>::infinity();
    if (snr >= snr_cap_db) {
        r.snr_db = snr_cap_db;
        r.capped = true;
    } else {
        r.snr_db = snr;
    }
    return r;
}

PileupParams pileup_threshold(const IirDesign& frontend)
{
    if (frontend.kind != FilterKind::lowpass) {
        throw std::invalid_argument("pileup threshold requires a lowpass front end");
    }
    IirFilter f(frontend);
    std::vector<double> h;
    double peak = 0.0;
    for (std::size_t i = 0; i < (1u << 20); ++i) {
        const double v = f.process(i == 0 ? 1.0 : 0.0);
        h.push_back(v);
        peak = std::max(peak, std::abs(v));
        if (i >= 64 && std::abs(v) < 1e-12 * peak) {
            bool quiet = true;
            for (std::size_t k = h.size() - 16; k < h.size(); ++k) {
                quiet = quiet && std::abs(h[k]) < 1e-12 * peak;
            }
            if (quiet) {
                break;
            }
        }
    }
    return pileup_from([&](double fr) { return frontend.magnitude(fr); }, h, frontend.rate);
}

PileupParams pileup_threshold(const FirDesign& frontend)
{
    return pileup_from([&](double fr) { return frontend.magnitude(fr); }, frontend.taps,
                       frontend.rate);
}

double Psd::total_power() const noexcept
{
    double s = 0.0;
    for (double d : density) {
        s += d;
    }
    return s * df;
}

Psd welch_psd(std::span<const double> x, double rate, std::size_t segment_length)
{
    if (segment_length < 2) {
        throw std::invalid_argument("PSD segment length must be at least 2");
    }
    if (x.size() < segment_length) {
        throw std::invalid_argument("signal shorter than one PSD segment");
    }
    if (!(rate > 0.0)) {
        throw std::invalid_argument("sample rate must be positive");
    }
    const std::size_t L = segment_length;
    std::vector<double> w(L);
    double wsum = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
        w[i] = 0.5 * (1.0 - std::cos(2.0 * pi * static_cast<double>(i) / static_cast<double>(L)));
        wsum += w[i] * w[i];
    }
    const std::size_t hop = std::max<std::size_t>(L / 2, 1);
    const std::size_t nb = L / 2 + 1;
    std::vector<double> acc(nb, 0.0);
    std::vector<double> seg(L);
    std::size_t count = 0;
    for (std::size_t start = 0; start + L <= x.size(); start += hop) {
        for (std::size_t i = 0; i < L; ++i) {
            seg[i] = x[start + i] * w[i];
        }
        const auto bins = rfft(seg, L);
        for (std::size_t k = 0; k < nb; ++k) {
            acc[k] += std::norm(bins[k]);
        }
        ++count;
    }
    Psd p;
    p.df = rate / static_cast<double>(L);
    p.frequency.resize(nb);
    p.density.resize(nb);
    for (std::size_t k = 0; k < nb; ++k) {
        const bool edge = k == 0 || (L % 2 == 0 && k == L / 2);
        p.frequency[k] = static_cast<double>(k) * p.df;
        p.density[k] = (edge ? 1.0 : 2.0) * acc[k] / (static_cast<double>(count) * rate * wsum);
    }
    return p;
}

Psd welch_psd(const Signal& x, std::size_t segment_length)
{
    return welch_psd(x.samples(), x.sample_rate(), segment_length);
}

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json MetricsReport::to_json() const
{
    nlohmann::json j = {
        {"chain", chain},
        {"baseband_snr_db", baseband_snr_db},
        {"snr_capped", snr_capped},
        {"capacity_bits_per_s_per_hz", capacity_bits_per_s_per_hz},
        {"capacity_is_proxy", true},
        {"clip_fraction", clip_fraction},
    };
    j["peakedness_dbg"] = peakedness_dbg ? nlohmann::json(*peakedness_dbg) : nlohmann::json();
    if (!psd.density.empty()) {
        j["psd"] = {{"frequency", psd.frequency}, {"density", psd.density}};
    }
    return j;
}

MetricsReport make_report(std::string chain, const SnrResult& snr, double clip_fraction,
                          std::optional<double> peakedness)
{
    MetricsReport r;
    r.chain = std::move(chain);
    r.baseband_snr_db = snr.snr_db;
    r.snr_capped = snr.capped;
    r.capacity_bits_per_s_per_hz = capacity(snr.snr_db);
    r.clip_fraction = clip_fraction;
    r.peakedness_dbg = peakedness;
    return r;
}

std::string metrics_csv_header()
{
    return "chain,baseband_snr_db,snr_capped,capacity_proxy_bits_per_s_per_hz,clip_fraction,"
           "peakedness_dbg";
}

std::string metrics_csv_row(const MetricsReport& r)
{
    return r.chain + "," + format_number(r.baseband_snr_db) + "," + (r.snr_capped ? "1" : "0")
           + "," + format_number(r.capacity_bits_per_s_per_hz) + ","
           + format_number(r.clip_fraction) + ","
           + (r.peakedness_dbg ? format_number(*r.peakedness_dbg) : std::string());
}

} // namespace onm
