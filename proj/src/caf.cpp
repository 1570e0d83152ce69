#include "onm/caf.hpp"

#include "onm/stats.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace onm {

namespace {

constexpr double pi = std::numbers::pi;

} // namespace

void CafConfig::validate() const
{
    if (!pair.band.group_delay || !pair.band.is_symmetric()) {
        throw std::invalid_argument("CAF band filter must be linear-phase");
    }
    if (pair.complement.taps.size() != pair.band.taps.size()) {
        throw std::invalid_argument("CAF complement must match the band filter length");
    }
    if (!(floor_fraction >= 0.0)) {
        throw std::invalid_argument("fence floor fraction must be non-negative");
    }
    adic.validate(pair.band.rate);
}

CafConfig make_lowpass_caf(double pass_edge, double stop_edge, double rate, double tau,
                           double attenuation_db)
{
    CafConfig c;
    c.pair = make_complement(design_fir_lowpass_edges(pass_edge, stop_edge, rate, attenuation_db));
    c.adic.tau = tau;
    return c;
}

CafConfig default_baseband_caf(double b0, double rate)
{
    CafConfig c = make_lowpass_caf(1.25 * b0, 1.65 * b0, rate, 0.5 / (2.0 * pi * 1.2 * b0));
    c.adic.fences.beta = 6.0;
    return c;
}

namespace {

AdicParams with_holdoff(AdicParams p, std::size_t holdoff)
{
    p.holdoff = std::max(p.holdoff, holdoff);
    return p;
}

} // namespace

Caf::Caf(CafConfig config)
    : config_((config.validate(), std::move(config))),
      band_(config_.pair.band),
      delay_(*config_.pair.band.group_delay),
      line_(delay_ + 1, 0.0),
      adic_(with_holdoff(config_.adic, 2 * delay_), config_.pair.band.rate)
{
    adic_.set_bypass(config_.bypass);
}

std::size_t Caf::warmup() const noexcept
{
    return adic_.params().holdoff + adic_.params().fences.calibration_length;
}

double Caf::process(double x)
{
    const double b = band_.process(x);
    line_[pos_] = x;
    pos_ = pos_ == delay_ ? 0 : pos_ + 1;
    // line_[pos_] now holds x[n - delay]; the complement output is
    // x[n - D] - band(x)[n].
    const double c = line_[pos_] - b;

    const std::size_t holdoff = adic_.params().holdoff;
    const std::size_t cal = adic_.params().fences.calibration_length;
    if (config_.floor_fraction > 0.0 && n_ >= holdoff && n_ < holdoff + cal) {
        floor_window_.push_back(x);
        if (floor_window_.size() == cal) {
            const double iqr =
                exact_quantile(floor_window_, 0.75) - exact_quantile(floor_window_, 0.25);
            adic_.set_fence_floor(config_.floor_fraction * iqr);
            floor_window_.clear();
            floor_window_.shrink_to_fit();
        }
    }
    const double a = adic_.step(c);
    ++n_;
    last_band_ = b;
    last_excess_ = c;
    last_adic_ = a;
    return b + a;
}

Signal Caf::apply(const Signal& x, std::vector<CafTaps>* taps)
{
    require_rate(rate(), x.sample_rate(), "CAF");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = process(x[i]);
        if (taps) {
            taps->push_back({x[i], last_band_, last_excess_, last_adic_, out[i]});
        }
    }
    return Signal(std::move(out), x.sample_rate());
}

void write_caf_taps_csv(std::ostream& out, const std::vector<CafTaps>& rows)
{
    out << "n,input,band,excess,adic,output\n";
    char buf[256];
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, r.input, r.band,
                      r.excess, r.adic, r.output);
        out << buf;
    }
}

DerivativeChain::DerivativeChain(DerivativeChainConfig config)
    : caf_(std::move(config.caf)), bandpass_(config.bandpass)
{
    const double rate = caf_.rate();
    require_rate(config.bandpass.rate, rate, "derivative chain bandpass");
    if (!(config.leak_frequency > 0.0)) {
        throw std::invalid_argument("integrator leak frequency must be positive");
    }
    leak_ = 1.0 - 2.0 * pi * config.leak_frequency / rate;
    if (!(leak_ > 0.0 && leak_ <= 1.0)) {
        throw std::invalid_argument("integrator leak must lie in (0, 1]");
    }
    if (!(config.reference_frequency > 0.0 && config.reference_frequency < rate / 2.0)) {
        throw std::invalid_argument("reference frequency must lie in (0, rate/2)");
    }
    const double w = 2.0 * pi * config.reference_frequency / rate;
    const std::complex<double> z1 = std::polar(1.0, -w);
    const std::complex<double> diff = 1.0 - z1;
    const std::complex<double> integ = 1.0 / (1.0 - leak_ * z1);
    const double mag = std::abs(diff * integ) * config.bandpass.magnitude(config.reference_frequency);
    if (!(mag > 0.0)) {
        throw std::invalid_argument("chain has zero gain at the reference frequency");
    }
    gain_ = 1.0 / mag;
}

double DerivativeChain::process(double x)
{
    const double d = x - prev_;
    prev_ = x;
    const double c = caf_.process(d);
    integ_ = leak_ * integ_ + c;
    return bandpass_.process(gain_ * integ_);
}

Signal DerivativeChain::apply(const Signal& x)
{
    require_rate(caf_.rate(), x.sample_rate(), "derivative chain");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = process(x[i]);
    }
    return Signal(std::move(out), x.sample_rate());
}

BandstopChain::BandstopChain(IirDesign bandstop, CafConfig caf)
    : bandstop_(std::move(bandstop)), caf_(std::move(caf))
{
    require_rate(bandstop_.design().rate, caf_.rate(), "bandstop chain");
}

double BandstopChain::process(double x)
{
    return caf_.process(bandstop_.process(x));
}

Signal BandstopChain::apply(const Signal& x)
{
    require_rate(caf_.rate(), x.sample_rate(), "bandstop chain");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = process(x[i]);
    }
    return Signal(std::move(out), x.sample_rate());
}

Signal shared_band_process(const AdicParams& params, const Signal& x)
{
    FeedbackAdic adic(params, x.sample_rate());
    return adic.apply(x);
}

} // namespace onm
