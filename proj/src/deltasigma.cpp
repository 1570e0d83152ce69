#include "onm/deltasigma.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace onm {

namespace {

constexpr double pi = std::numbers::pi;

} // namespace

DeltaSigmaModulator::DeltaSigmaModulator(double clip_level) : clip_(clip_level)
{
    if (!(clip_level > 0.0 && clip_level <= 1.0)) {
        throw std::invalid_argument("clip level must lie in (0, 1]");
    }
}

int DeltaSigmaModulator::step(double x) noexcept
{
    const double u = std::clamp(x, -clip_, clip_);
    i1_ += u - v_;
    i2_ += i1_ - v_;
    const int bit = i2_ >= 0.0 ? 1 : -1;
    v_ = bit;
    return bit;
}

Signal DeltaSigmaModulator::modulate(const Signal& x)
{
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = step(x[i]);
    }
    return Signal(std::move(out), x.sample_rate());
}

void DeltaSigmaModulator::reset() noexcept
{
    i1_ = i2_ = v_ = 0.0;
}

std::vector<std::uint8_t> pack_bits(std::span<const double> bitstream)
{
    std::vector<std::uint8_t> out((bitstream.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bitstream.size(); ++i) {
        if (bitstream[i] > 0.0) {
            out[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
        }
    }
    return out;
}

std::vector<double> unpack_bits(std::span<const std::uint8_t> packed, std::size_t count)
{
    if (count > packed.size() * 8) {
        throw std::invalid_argument("bit count exceeds packed data");
    }
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = (packed[i / 8] >> (i % 8)) & 1u ? 1.0 : -1.0;
    }
    return out;
}

std::pair<IirDesign, IirDesign> codesign_frontend(int analog_order, int digital_order,
                                                  double cutoff, double rate)
{
    if (analog_order < 2 || digital_order < 2 || analog_order % 2 || digital_order % 2) {
        throw std::invalid_argument("co-designed factors must have even orders of at least 2");
    }
    if (analog_order + digital_order > 8) {
        throw std::invalid_argument("combined order must not exceed 8");
    }
    if (!(rate > 0.0) || !(cutoff > 0.0 && cutoff < rate / 20.0)) {
        throw std::invalid_argument("co-design cutoff must lie below a tenth of Nyquist");
    }
    auto poles = bessel_prototype_poles(analog_order + digital_order);
    // Upper-half-plane poles, most damped (largest |Re|/|p|) first.
    std::vector<std::complex<double>> upper;
    for (const auto& p : poles) {
        if (p.imag() > 0.0) {
            upper.push_back(p);
        }
    }
    std::sort(upper.begin(), upper.end(), [](const auto& a, const auto& b) {
        return -a.real() / std::abs(a) > -b.real() / std::abs(b);
    });
    auto take = [&](std::size_t first, std::size_t pairs) {
        std::vector<std::complex<double>> out;
        for (std::size_t i = first; i < first + pairs; ++i) {
            out.push_back(upper[i]);
            out.push_back(std::conj(upper[i]));
        }
        return out;
    };
    const auto na = static_cast<std::size_t>(analog_order / 2);
    const auto nd = static_cast<std::size_t>(digital_order / 2);
    const auto pa = take(0, na);
    const auto pd = take(na, nd);
    return {lowpass_from_prototype(pa, cutoff, rate, IirFamily::bessel, "bessel-factor-a"),
            lowpass_from_prototype(pd, cutoff, rate, IirFamily::bessel, "bessel-factor-b")};
}

std::size_t PipelineConfig::decimation() const
{
    if (!(modulator_rate > 0.0 && output_rate > 0.0)) {
        throw std::invalid_argument("pipeline rates must be positive");
    }
    const double ratio = modulator_rate / output_rate;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio) {
        throw std::invalid_argument("modulator rate must be an integer multiple of the output rate");
    }
    return static_cast<std::size_t>(rounded);
}

void PipelineConfig::validate() const
{
    decimation();
    if (!(clip_level > 0.0 && clip_level <= 1.0)) {
        throw std::invalid_argument("clip level must lie in (0, 1]");
    }
    if (!(wideband_cutoff > 0.0 && wideband_cutoff < modulator_rate / 2.0)) {
        throw std::invalid_argument("wideband cutoff must lie below the modulator Nyquist");
    }
    if (wideband_family == IirFamily::custom) {
        throw std::invalid_argument("wideband filter family must be bessel or butterworth");
    }
    if (band_edge < 0.0 || caf_transition < 0.0 || tau < 0.0) {
        throw std::invalid_argument("CAF parameters must be non-negative");
    }
    fences.validate();
}

namespace {

double resolved_band_edge(const PipelineConfig& c)
{
    return c.band_edge > 0.0 ? c.band_edge : 0.4 * c.output_rate;
}

IirDesign make_wideband(const PipelineConfig& c)
{
    if (c.wideband_family == IirFamily::bessel
        && c.wideband_cutoff < c.modulator_rate / 20.0) {
        auto [a, b] = codesign_frontend(2, 2, c.wideband_cutoff, c.modulator_rate);
        IirDesign d = cascade({a, b});
        d.family = IirFamily::bessel;
        d.kind = FilterKind::lowpass;
        d.label = "codesigned-bessel";
        return d;
    }
    return design_iir(c.wideband_family, FilterKind::lowpass, 4, {c.wideband_cutoff},
                      c.modulator_rate);
}

FirDesign make_decimation_filter(const PipelineConfig& c)
{
    const double nyq = c.output_rate / 2.0;
    const double pass = c.decimation_pass > 0.0 ? c.decimation_pass : 0.8 * nyq;
    const double stop = c.decimation_stop > 0.0 ? c.decimation_stop : 1.2 * nyq;
    FirDesign d = design_fir_lowpass_edges(pass, stop, c.modulator_rate, c.decimation_attenuation);
    d.label = "decimation";
    return d;
}

} // namespace

CafConfig pipeline_caf_config(const PipelineConfig& c)
{
    c.validate();
    const double edge = resolved_band_edge(c);
    const double transition = c.caf_transition > 0.0 ? c.caf_transition : edge;
    const double tau = c.tau > 0.0 ? c.tau : 10.0 / (2.0 * pi * edge);
    CafConfig caf = make_lowpass_caf(edge, edge + transition, c.modulator_rate, tau);
    caf.adic.fences = c.fences;
    caf.floor_fraction = c.floor_fraction;
    caf.bypass = c.bypass_caf;
    return caf;
}

DeltaSigmaPipeline::DeltaSigmaPipeline(PipelineConfig config)
    : config_((config.validate(), std::move(config))),
      dsm_(config_.clip_level),
      wideband_(make_wideband(config_)),
      wideband_filter_(wideband_),
      caf_(pipeline_caf_config(config_)),
      decimator_(make_decimation_filter(config_), config_.decimation())
{
}

Signal DeltaSigmaPipeline::process(const Signal& x, PipelineProbes* probes)
{
    require_rate(config_.modulator_rate, x.sample_rate(), "delta-sigma pipeline");
    std::vector<double> out;
    out.reserve(x.size() / decimator_.factor() + 1);
    if (probes) {
        probes->bitstream.reserve(x.size());
        probes->wideband.reserve(x.size());
        probes->caf.reserve(x.size());
    }
    double y = 0.0;
    for (double v : x.samples()) {
        const double bit = dsm_.step(v);
        const double w = wideband_filter_.process(bit);
        const double c = caf_.process(w);
        if (probes) {
            probes->bitstream.push_back(bit);
            probes->wideband.push_back(w);
            probes->caf.push_back(c);
        }
        if (decimator_.push(c, y)) {
            out.push_back(y);
        }
    }
    return Signal(std::move(out), config_.output_rate);
}

} // namespace onm
