#include "onm/chains.hpp"

#include "onm/generators.hpp"
#include "onm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace onm {

namespace {

constexpr double pi = std::numbers::pi;

std::size_t dc_delay_samples(const IirDesign& d)
{
    return static_cast<std::size_t>(std::ceil(std::max(0.0, d.group_delay(0.0)) * d.rate));
}

} // namespace

const char* to_string(ChainKind kind) noexcept
{
    switch (kind) {
    case ChainKind::linear: return "linear";
    case ChainKind::caf: return "caf";
    case ChainKind::derivative_caf: return "derivative-caf";
    case ChainKind::bandstop_caf: return "bandstop-caf";
    case ChainKind::shared_band_adic: return "shared-band-adic";
    case ChainKind::deltasigma: return "deltasigma";
    }
    return "linear";
}

ChainKind parse_chain_kind(const std::string& name)
{
    for (auto k : {ChainKind::linear, ChainKind::caf, ChainKind::derivative_caf,
                   ChainKind::bandstop_caf, ChainKind::shared_band_adic, ChainKind::deltasigma}) {
        if (name == to_string(k)) {
            return k;
        }
    }
    throw std::invalid_argument("unknown chain '" + name + "'");
}

void WidebandSetup::validate() const
{
    if (!(b0 > 0.0 && rate > 0.0)) {
        throw std::invalid_argument("bandwidth and rate must be positive");
    }
    if (!(frontend_factor * b0 < rate / 2.0)) {
        throw std::invalid_argument("front-end cutoff must lie below Nyquist");
    }
    if (!(band_pass_factor > 0.0 && band_stop_factor > band_pass_factor)) {
        throw std::invalid_argument("CAF band edges must satisfy 0 < pass < stop");
    }
    if (!(band_stop_factor * b0 < rate / 2.0)) {
        throw std::invalid_argument("CAF band split must lie below Nyquist");
    }
    if (!(tau_scale > 0.0 && shared_tau_scale > 0.0)) {
        throw std::invalid_argument("ADiC time scales must be positive");
    }
    if (!(bandstop_lo_factor > 0.0 && bandstop_hi_factor > bandstop_lo_factor)) {
        throw std::invalid_argument("bandstop edges must be increasing");
    }
    if (!(floor_fraction >= 0.0)) {
        throw std::invalid_argument("fence floor fraction must be non-negative");
    }
    fences.validate();
}

IirDesign WidebandSetup::frontend() const
{
    IirDesign d = design_iir(frontend_family, FilterKind::lowpass, frontend_order,
                             {frontend_factor * b0}, rate);
    d.label = "frontend";
    return d;
}

IirDesign WidebandSetup::bandstop() const
{
    IirDesign d = design_iir(IirFamily::butterworth, FilterKind::bandstop, bandstop_order,
                             {bandstop_lo_factor * b0, bandstop_hi_factor * b0}, rate);
    d.label = "bandstop";
    return d;
}

FirDesign WidebandSetup::matched_filter() const
{
    return design_rrc(b0, rrc_rolloff, rrc_span, rate);
}

CafConfig WidebandSetup::caf_config() const
{
    CafConfig c = make_lowpass_caf(band_pass_factor * b0, band_stop_factor * b0, rate,
                                   tau_scale / (2.0 * pi * 1.2 * b0), band_attenuation);
    c.adic.fences = fences;
    c.floor_fraction = floor_fraction;
    return c;
}

AdicParams WidebandSetup::shared_adic_params() const
{
    AdicParams p;
    p.tau = shared_tau_scale / (2.0 * pi * b0);
    p.fences = shared_fences;
    return p;
}

double WidebandSetup::lambda_c() const
{
    return pileup_threshold(frontend()).lambda_c;
}

std::size_t chain_warmup(const WidebandSetup& setup, ChainKind kind)
{
    std::size_t delay = dc_delay_samples(setup.frontend()) + *setup.matched_filter().group_delay;
    std::size_t adic = 0;
    switch (kind) {
    case ChainKind::linear: break;
    case ChainKind::bandstop_caf:
        delay += dc_delay_samples(setup.bandstop());
        [[fallthrough]];
    case ChainKind::caf: {
        const Caf caf(setup.caf_config());
        delay += caf.delay();
        adic = caf.warmup();
        break;
    }
    case ChainKind::shared_band_adic:
        adic = setup.fences.calibration_length;
        break;
    default:
        throw std::invalid_argument(std::string("chain '") + to_string(kind)
                                    + "' is not a baseband SNR chain");
    }
    return 4 * delay + adic;
}

ChainRun run_chain(const WidebandSetup& setup, ChainKind kind, bool bypass, const Signal& x)
{
    setup.validate();
    require_rate(setup.rate, x.sample_rate(), "baseband chain");
    IirFilter frontend(setup.frontend());
    FirFilter matched(setup.matched_filter());
    std::optional<IirFilter> bandstop;
    std::optional<Caf> caf;
    std::optional<FeedbackAdic> adic;
    std::size_t adic_warmup = 0;
    switch (kind) {
    case ChainKind::linear: break;
    case ChainKind::bandstop_caf:
        bandstop.emplace(setup.bandstop());
        [[fallthrough]];
    case ChainKind::caf:
        caf.emplace(setup.caf_config());
        caf->set_bypass(bypass);
        adic_warmup = caf->warmup();
        break;
    case ChainKind::shared_band_adic:
        adic.emplace(setup.shared_adic_params(), setup.rate);
        adic->set_bypass(bypass);
        adic_warmup = setup.fences.calibration_length;
        break;
    default:
        throw std::invalid_argument(std::string("chain '") + to_string(kind)
                                    + "' is not a baseband SNR chain");
    }

    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double v = frontend.process(x[i]);
        if (bandstop) {
            v = bandstop->process(v);
        }
        if (caf) {
            v = caf->process(v);
        } else if (adic) {
            v = adic->step(v);
        }
        out[i] = matched.process(v);
    }
    ChainRun run{Signal(std::move(out), x.sample_rate()), 0.0};
    std::size_t clipped = caf ? caf->adic().clipped_count() : (adic ? adic->clipped_count() : 0);
    if (x.size() > adic_warmup) {
        run.clip_fraction =
            static_cast<double>(clipped) / static_cast<double>(x.size() - adic_warmup);
    }
    return run;
}

double baseband_power(const WidebandSetup& setup, const Signal& x)
{
    const auto run = run_chain(setup, ChainKind::linear, false, x);
    const std::size_t skip = chain_warmup(setup, ChainKind::linear);
    if (skip >= x.size()) {
        throw std::invalid_argument("signal shorter than the chain warm-up");
    }
    return mean_square(run.output.samples().subspan(skip));
}

Signal adjacent_channel_noise(const WidebandSetup& setup, double center_factor,
                              double bandwidth_factor, double duration, RngSeed seed)
{
    if (!(center_factor > 0.0 && bandwidth_factor > 0.0)) {
        throw std::invalid_argument("adjacent channel center and bandwidth must be positive");
    }
    const double fc = center_factor * setup.b0;
    if (!(fc + bandwidth_factor * setup.b0 * (1.0 + setup.rrc_rolloff) < setup.rate / 2.0)) {
        throw std::invalid_argument("adjacent channel must lie below Nyquist");
    }
    const Signal base = generate_rrc_signal(bandwidth_factor * setup.b0, duration, setup.rate,
                                            seed, setup.rrc_rolloff, setup.rrc_span);
    std::vector<double> out(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        const double t = static_cast<double>(i) / setup.rate;
        out[i] = std::sqrt(2.0) * base[i] * std::cos(2.0 * pi * fc * t);
    }
    return Signal(std::move(out), setup.rate);
}

Signal narrowband_poisson_noise(const WidebandSetup& setup, double lambda, double duration,
                                RngSeed seed)
{
    FirFilter band(design_fir_lowpass_edges(setup.b0, 1.25 * setup.b0, setup.rate,
                                            setup.band_attenuation));
    const std::size_t d = *band.design().group_delay;
    // Generate extra samples so the output is band-limited from t = 0.
    const double extra = static_cast<double>(d) / setup.rate;
    const Signal raw = generate_poisson_impulses(duration + 2.0 * extra, lambda, 1.0, setup.rate, seed);
    const Signal filtered = band.apply(raw);
    return filtered.slice(2 * d, sample_count(duration, setup.rate));
}

SnrMeasurement measure_chain(const WidebandSetup& setup, ChainKind kind, const Signal& clean,
                             const Signal& noise, bool with_peakedness)
{
    const Signal noisy = clean + noise;
    const std::size_t skip =
        std::max(chain_warmup(setup, ChainKind::linear), chain_warmup(setup, kind));
    if (skip + 100 >= clean.size()) {
        throw std::invalid_argument("signal too short for the chain warm-up");
    }
    const auto ref = run_chain(setup, kind, true, clean);
    const auto twin = run_chain(setup, kind, true, noisy);
    const auto nl = run_chain(setup, kind, false, noisy);

    auto peak = [&](const Signal& y) -> std::optional<double> {
        if (!with_peakedness) {
            return std::nullopt;
        }
        std::vector<double> e(y.size() - skip);
        for (std::size_t i = skip; i < y.size(); ++i) {
            e[i - skip] = y[i] - ref.output[i];
        }
        return peakedness_dbg(e);
    };

    SnrMeasurement m;
    const auto snr_twin = measure_snr(ref.output.samples(), twin.output.samples(), skip);
    const auto snr_nl = measure_snr(ref.output.samples(), nl.output.samples(), skip);
    const std::string twin_name =
        kind == ChainKind::bandstop_caf ? "bandstop-linear" : to_string(ChainKind::linear);
    m.linear_twin = make_report(twin_name, snr_twin, 0.0, peak(twin.output));
    m.nonlinear = make_report(to_string(kind), snr_nl, nl.clip_fraction, peak(nl.output));
    m.gain_db = snr_nl.snr_db - snr_twin.snr_db;
    m.skip = skip;
    m.reference = ref.output;
    m.linear_output = twin.output;
    m.nonlinear_output = nl.output;
    return m;
}

} // namespace onm
