#include "onm/experiments.hpp"

#include "onm/adic.hpp"
#include "onm/generators.hpp"
#include "onm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace onm {

namespace {

constexpr double pi = std::numbers::pi;

Signal run_iir(const IirDesign& d, const Signal& x)
{
    IirFilter f(d);
    return f.apply(x);
}

void require_toy_grid(double period, double rate, int periods, int skip_periods)
{
    if (!(period > 0.0 && rate > 0.0)) {
        throw std::invalid_argument("toy period and rate must be positive");
    }
    if (!(period * rate >= 20.0)) {
        throw std::invalid_argument("toy period must span at least 20 samples");
    }
    if (!(skip_periods >= 0 && periods > skip_periods)) {
        throw std::invalid_argument("toy run must be longer than its warm-up");
    }
}

std::size_t periods_to_samples(int periods, double period, double rate)
{
    return sample_count(static_cast<double>(periods) * period, rate);
}

} // namespace

double rms_difference(const Signal& a, const Signal& b, std::size_t skip)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("signal lengths differ");
    }
    if (skip >= a.size()) {
        throw std::invalid_argument("measurement window is empty");
    }
    double s = 0.0;
    for (std::size_t i = skip; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(a.size() - skip));
}

void Toy1Config::validate() const
{
    require_toy_grid(period, rate, periods, skip_periods);
    if (!(amplitude > 0.0)) {
        throw std::invalid_argument("tone amplitude must be positive");
    }
    if (!(tau_periods > 0.0)) {
        throw std::invalid_argument("ADiC tau must be positive");
    }
    if (!(4.5 / period < rate / 2.0)) {
        throw std::invalid_argument("toy bandpass must lie below Nyquist");
    }
    fences.validate();
}

IirDesign Toy1Config::bandpass() const
{
    IirDesign hp = design_iir(IirFamily::butterworth, FilterKind::highpass, 2,
                              {1.0 / (6.0 * period)}, rate);
    IirDesign lp = design_iir(IirFamily::butterworth, FilterKind::lowpass, 4,
                              {9.0 / (2.0 * period)}, rate);
    IirDesign d = cascade({hp, lp});
    d.label = "toy1-bandpass";
    return d;
}

std::vector<ToyCase> run_toy1(const Toy1Config& c)
{
    c.validate();
    const double duration = static_cast<double>(c.periods) * c.period;
    const Signal clean = generate_tone(c.period, c.amplitude, c.rate, duration)
                         + generate_tone(c.period / 3.0, -c.amplitude, c.rate, duration);
    // Harmonic amplitude of an impulse train of area A and period T is 2A/T.
    const double area = c.amplitude * c.period / 2.0;
    const IirDesign bp = c.bandpass();
    AdicParams ap;
    ap.tau = c.tau_periods * c.period;
    ap.fences = c.fences;

    const Signal ref = run_iir(bp, clean);
    const std::size_t skip = periods_to_samples(c.skip_periods, c.period, c.rate);

    std::vector<ToyCase> out;
    for (const auto& [phase, delay] :
         {std::pair{"destructive-first", 0.5 * c.period}, std::pair{"constructive-first", 0.0}}) {
        const Signal noisy =
            clean + generate_impulse_train(c.period, area, c.rate, duration, delay);
        ToyCase tc{phase,
                   clean,
                   noisy,
                   run_iir(bp, noisy),
                   run_iir(bp, shared_band_process(ap, noisy)),
                   ref,
                   ref,
                   0.0,
                   0.0,
                   skip};
        tc.linear_rms_error = rms_difference(tc.linear_output, tc.linear_reference, skip);
        tc.nonlinear_rms_error = rms_difference(tc.nonlinear_output, tc.nonlinear_reference, skip);
        out.push_back(std::move(tc));
    }
    return out;
}

void Toy2Config::validate() const
{
    require_toy_grid(period, rate, periods, skip_periods);
    if (!(amplitude > 0.0)) {
        throw std::invalid_argument("sine amplitude must be positive");
    }
    if (!(band_pass_factor > 3.0 && band_stop_factor > band_pass_factor)) {
        throw std::invalid_argument("CAF band must pass 3/T and satisfy pass < stop");
    }
    if (!(band_stop_factor / period < rate / 2.0)) {
        throw std::invalid_argument("CAF band split must lie below Nyquist");
    }
    if (!(tau_periods > 0.0 && floor_fraction >= 0.0 && leak_factor > 0.0 && leak_factor < 1.0)) {
        throw std::invalid_argument("invalid derivative chain parameters");
    }
    fences.validate();
}

IirDesign Toy2Config::bandpass() const
{
    IirDesign hp = design_iir(IirFamily::butterworth, FilterKind::highpass, 4, {2.0 / period}, rate);
    IirDesign lp = design_iir(IirFamily::butterworth, FilterKind::lowpass, 4, {4.5 / period}, rate);
    IirDesign d = cascade({hp, lp});
    d.label = "toy2-bandpass";
    return d;
}

DerivativeChainConfig Toy2Config::chain() const
{
    DerivativeChainConfig d;
    d.caf = make_lowpass_caf(band_pass_factor / period, band_stop_factor / period, rate,
                             tau_periods * period);
    d.caf.adic.fences = fences;
    d.caf.floor_fraction = floor_fraction;
    d.reference_frequency = 3.0 / period;
    d.leak_frequency = leak_factor * d.reference_frequency;
    d.bandpass = bandpass();
    return d;
}

std::vector<ToyCase> run_toy2(const Toy2Config& c)
{
    c.validate();
    const double duration = static_cast<double>(c.periods) * c.period;
    // sin(6 pi t / T) as a cosine delayed by T/12.
    const Signal clean = generate_tone(c.period / 3.0, c.amplitude, c.rate, duration, c.period / 12.0);
    // The 3rd harmonic of a square of amplitude S is 4S/(3 pi) sin(6 pi t / T).
    const double square_amp = 3.0 * pi * c.amplitude / 4.0;
    const IirDesign bp = c.bandpass();
    const DerivativeChainConfig cfg = c.chain();

    const Signal lin_ref = run_iir(bp, clean);
    DerivativeChain ref_chain(cfg);
    ref_chain.set_bypass(true);
    const Signal nl_ref = ref_chain.apply(clean);
    const std::size_t skip = periods_to_samples(c.skip_periods, c.period, c.rate);

    std::vector<ToyCase> out;
    for (const auto& [phase, delay] :
         {std::pair{"constructive", 0.0}, std::pair{"destructive", 0.5 * c.period}}) {
        const Signal noisy =
            clean + generate_square(c.period, square_amp, c.rate, duration, delay);
        DerivativeChain chain(cfg);
        ToyCase tc{phase, clean, noisy, run_iir(bp, noisy), chain.apply(noisy), lin_ref, nl_ref,
                   0.0,   0.0,   skip};
        tc.linear_rms_error = rms_difference(tc.linear_output, tc.linear_reference, skip);
        tc.nonlinear_rms_error = rms_difference(tc.nonlinear_output, tc.nonlinear_reference, skip);
        out.push_back(std::move(tc));
    }
    return out;
}

void DeltaSigmaExperimentConfig::validate() const
{
    pipeline.validate();
    if (!(std::abs(dc_level) < pipeline.clip_level)) {
        throw std::invalid_argument("DC level must lie inside the clip level");
    }
    if (dc_samples < 1000) {
        throw std::invalid_argument("DC run needs at least 1000 samples");
    }
    if (!(duration > 0.0 && tone_frequency > 0.0 && tone_amplitude >= 0.0 && thermal_rms >= 0.0
          && impulse_rate >= 0.0 && impulse_amplitude >= 0.0 && impulse_width >= 1)) {
        throw std::invalid_argument("invalid delta-sigma experiment parameters");
    }
    if (!(tone_frequency < 0.4 * pipeline.output_rate)) {
        throw std::invalid_argument("tone must lie inside the decimated band");
    }
}

DeltaSigmaExperimentResult run_deltasigma_experiment(const DeltaSigmaExperimentConfig& c)
{
    c.validate();
    const double fs = c.pipeline.modulator_rate;
    DeltaSigmaExperimentResult r;

    DeltaSigmaModulator dc_mod(c.pipeline.clip_level);
    double acc = 0.0;
    for (std::size_t i = 0; i < c.dc_samples; ++i) {
        const int b = dc_mod.step(c.dc_level);
        r.binary = r.binary && (b == 1 || b == -1);
        acc += b;
    }
    r.dc_mean = acc / static_cast<double>(c.dc_samples);
    r.dc_error = std::abs(r.dc_mean - c.dc_level);

    const Signal tone = generate_tone(1.0 / c.tone_frequency, c.tone_amplitude, fs, c.duration);
    const Signal thermal = generate_thermal(c.duration, c.thermal_rms * c.thermal_rms, fs,
                                            derive_seed(RngSeed{c.seed}, 1));
    const Signal clean = tone + thermal;

    std::vector<double> pulses(clean.size(), 0.0);
    {
        std::mt19937_64 rng(derive_seed(RngSeed{c.seed}, 2).value);
        std::exponential_distribution<double> gap(c.impulse_rate > 0.0 ? c.impulse_rate : 1.0);
        std::bernoulli_distribution sign(0.5);
        double t = c.impulse_rate > 0.0 ? gap(rng) : c.duration;
        while (t < c.duration) {
            const auto start = static_cast<std::size_t>(t * fs);
            const double a = sign(rng) ? c.impulse_amplitude : -c.impulse_amplitude;
            for (std::size_t k = start; k < std::min(start + c.impulse_width, pulses.size()); ++k) {
                pulses[k] += a;
            }
            t += gap(rng);
        }
    }
    const Signal noisy = clean + Signal(pulses, fs);

    auto run = [&](const Signal& x, bool bypass, PipelineProbes* probes = nullptr) {
        PipelineConfig pc = c.pipeline;
        pc.bypass_caf = bypass;
        DeltaSigmaPipeline p(pc);
        return p.process(x, probes);
    };

    PipelineProbes probes;
    r.clean_output = run(clean, true, &probes);
    r.binary = r.binary && std::all_of(probes.bitstream.begin(), probes.bitstream.end(),
                                       [](double b) { return b == 1.0 || b == -1.0; });
    r.bitstream = std::move(probes.bitstream);
    r.output_samples = r.clean_output.size();
    {
        // Skip the CAF warm-up plus four decimation filter delays, at the output rate.
        const DeltaSigmaPipeline p(c.pipeline);
        const std::size_t warm = p.caf().warmup() + p.caf().delay()
                                 + 4 * *p.decimator().design().group_delay;
        r.skip = warm / c.pipeline.decimation() + 1;
    }
    if (r.skip + 10 >= r.output_samples) {
        throw std::invalid_argument("delta-sigma run shorter than the pipeline warm-up");
    }

    // Superposition with the CAF bypassed: p(a + b) vs p(a) + p(b).
    const Signal half_a = scaled(clean, 0.5);
    const Signal part_b = scaled(thermal, 0.5) + scaled(tone, -0.25);
    const Signal pa = run(half_a, true);
    const Signal pb = run(part_b, true);
    const Signal pab = run(half_a + part_b, true);
    double res = 0.0;
    for (std::size_t i = r.skip; i < pab.size(); ++i) {
        const double d = pab[i] - pa[i] - pb[i];
        res += d * d;
    }
    r.superposition_residual = res / static_cast<double>(pab.size() - r.skip);

    // Quantization floor: the same chain with the modulator replaced by identity
    // gives the ideal linear output; the floor is the mean-square deviation.
    auto ideal = [&](const Signal& x) {
        PipelineConfig pc = c.pipeline;
        pc.bypass_caf = true;
        const DeltaSigmaPipeline p(pc);
        IirFilter wb(p.wideband_design());
        Decimator dec(p.decimator().design(), p.decimator().factor());
        // The bypassed CAF is a pure delay.
        const std::size_t delay = p.caf().delay();
        std::vector<double> line(delay + 1, 0.0);
        std::vector<double> out;
        std::size_t pos = 0;
        double y = 0.0;
        for (double v : x.samples()) {
            line[pos] = wb.process(std::clamp(v, -pc.clip_level, pc.clip_level));
            pos = pos == delay ? 0 : pos + 1;
            if (dec.push(line[pos], y)) {
                out.push_back(y);
            }
        }
        return Signal(std::move(out), pc.output_rate);
    };
    double floor = 0.0;
    for (const auto* pair : {&half_a, &part_b}) {
        const Signal lin = ideal(*pair);
        const Signal got = run(*pair, true);
        double s = 0.0;
        for (std::size_t i = r.skip; i < got.size(); ++i) {
            s += (got[i] - lin[i]) * (got[i] - lin[i]);
        }
        floor += s / static_cast<double>(got.size() - r.skip);
    }
    {
        const Signal lin = ideal(half_a + part_b);
        double s = 0.0;
        for (std::size_t i = r.skip; i < pab.size(); ++i) {
            s += (pab[i] - lin[i]) * (pab[i] - lin[i]);
        }
        floor += s / static_cast<double>(pab.size() - r.skip);
    }
    r.quantization_floor = floor;

    r.bypassed_output = run(noisy, true);
    r.caf_output = run(noisy, false);
    const Signal caf_clean = run(clean, false);
    auto energy = [&](const Signal& y, const Signal& ref) {
        double s = 0.0;
        for (std::size_t i = r.skip; i < y.size(); ++i) {
            s += (y[i] - ref[i]) * (y[i] - ref[i]);
        }
        return s / static_cast<double>(y.size() - r.skip);
    };
    r.impulse_energy_bypassed = energy(r.bypassed_output, r.clean_output);
    r.impulse_energy_caf = energy(r.caf_output, caf_clean);
    r.impulse_reduction_db =
        10.0 * std::log10(r.impulse_energy_bypassed / r.impulse_energy_caf);
    return r;
}

} // namespace onm
