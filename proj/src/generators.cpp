#include "onm/generators.hpp"

#include "onm/error.hpp"
#include "onm/fir.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace onm {

namespace {

constexpr double pi = std::numbers::pi;

void require_period(double period, double rate)
{
    if (!(rate > 0.0)) {
        throw std::invalid_argument("sample rate must be positive");
    }
    if (!(period * rate >= 2.0)) {
        throw std::invalid_argument("period must span at least 2 samples");
    }
}

// Fractional position within the period, in [0, 1).
double cycle_phase(std::size_t n, double period, double rate, double delay)
{
    const double cycles = (static_cast<double>(n) - delay * rate) / (period * rate);
    const double f = cycles - std::floor(cycles);
    return f >= 1.0 ? 0.0 : f;
}

} // namespace

const char* to_string(NoiseKind kind) noexcept
{
    switch (kind) {
    case NoiseKind::thermal_gaussian: return "thermal-gaussian";
    case NoiseKind::poisson_impulses: return "poisson-impulses";
    case NoiseKind::periodic_gaussian_bursts: return "periodic-gaussian-bursts";
    }
    return "thermal-gaussian";
}

NoiseKind parse_noise_kind(const std::string& name)
{
    if (name == "thermal-gaussian") return NoiseKind::thermal_gaussian;
    if (name == "poisson-impulses") return NoiseKind::poisson_impulses;
    if (name == "periodic-gaussian-bursts") return NoiseKind::periodic_gaussian_bursts;
    throw std::invalid_argument("unknown noise kind '" + name + "'");
}

void NoiseSpec::validate() const
{
    if (!(power >= 0.0)) {
        throw std::invalid_argument("noise power must be non-negative");
    }
    if (kind == NoiseKind::poisson_impulses && !(rate > 0.0)) {
        throw std::invalid_argument("Poisson rate must be positive");
    }
    if (kind == NoiseKind::periodic_gaussian_bursts) {
        if (!(duty_cycle > 0.0 && duty_cycle <= 1.0)) {
            throw std::invalid_argument("duty cycle must lie in (0, 1]");
        }
        if (!(burst_period > 0.0)) {
            throw std::invalid_argument("burst period must be positive");
        }
    }
}

Signal generate_thermal(double duration, double power, double rate, RngSeed seed)
{
    const std::size_t n = sample_count(duration, rate);
    if (!(power >= 0.0)) {
        throw std::invalid_argument("power must be non-negative");
    }
    std::vector<double> out(n, 0.0);
    if (power > 0.0) {
        std::mt19937_64 rng(seed.value);
        std::normal_distribution<double> normal(0.0, std::sqrt(power));
        for (auto& v : out) {
            v = normal(rng);
        }
    }
    return Signal(std::move(out), rate);
}

Signal generate_poisson_impulses(double duration, double lambda, double amp_std, double rate,
                                 RngSeed seed)
{
    const std::size_t n = sample_count(duration, rate);
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("Poisson rate must be positive");
    }
    if (!(amp_std >= 0.0)) {
        throw std::invalid_argument("amplitude deviation must be non-negative");
    }
    if (lambda / rate >= 1.0) {
        warn("Poisson rate " + std::to_string(lambda) + " Hz is not below the sample rate; "
             "coincident arrivals are summed");
    }
    std::vector<double> out(n, 0.0);
    std::mt19937_64 rng(seed.value);
    std::exponential_distribution<double> gap(lambda);
    std::normal_distribution<double> area(0.0, amp_std);
    const double end = static_cast<double>(n) / rate;
    double t = gap(rng);
    while (t < end) {
        const auto idx = static_cast<std::size_t>(t * rate);
        if (idx < n) {
            out[idx] += area(rng) * rate;
        }
        t += gap(rng);
    }
    return Signal(std::move(out), rate);
}

Signal generate_bursts(double duration, double burst_period, double duty, double power_in_burst,
                       double rate, RngSeed seed, double phase)
{
    const std::size_t n = sample_count(duration, rate);
    if (!(duty > 0.0 && duty <= 1.0)) {
        throw std::invalid_argument("duty cycle must lie in (0, 1]");
    }
    require_period(burst_period, rate);
    if (!(power_in_burst >= 0.0)) {
        throw std::invalid_argument("burst power must be non-negative");
    }
    std::vector<double> out(n, 0.0);
    std::mt19937_64 rng(seed.value);
    std::normal_distribution<double> normal(0.0, std::sqrt(power_in_burst));
    for (std::size_t i = 0; i < n; ++i) {
        // Draw for every sample so burst placement does not shift the noise stream.
        const double v = normal(rng);
        if (duty >= 1.0 || cycle_phase(i, burst_period, rate, phase) < duty) {
            out[i] = v;
        }
    }
    return Signal(std::move(out), rate);
}

Signal generate_tone(double period, double amplitude, double rate, double duration, double delay)
{
    require_period(period, rate);
    const std::size_t n = sample_count(duration, rate);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = amplitude * std::cos(2.0 * pi * cycle_phase(i, period, rate, delay));
    }
    return Signal(std::move(out), rate);
}

Signal generate_square(double period, double amplitude, double rate, double duration,
                       double delay)
{
    require_period(period, rate);
    const std::size_t n = sample_count(duration, rate);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = cycle_phase(i, period, rate, delay) < 0.5 ? amplitude : -amplitude;
    }
    return Signal(std::move(out), rate);
}

Signal generate_triangle(double period, double amplitude, double rate, double duration,
                         double delay)
{
    require_period(period, rate);
    const std::size_t n = sample_count(duration, rate);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = cycle_phase(i, period, rate, delay);
        out[i] = amplitude * (4.0 * std::abs(p - 0.5) - 1.0);
    }
    return Signal(std::move(out), rate);
}

Signal generate_impulse_train(double period, double area, double rate, double duration,
                              double delay)
{
    require_period(period, rate);
    const std::size_t n = sample_count(duration, rate);
    std::vector<double> out(n, 0.0);
    // First impulse at or after t = 0.
    const double first = delay - std::floor(delay / period) * period;
    for (std::size_t k = 0;; ++k) {
        const double t = first + static_cast<double>(k) * period;
        const auto idx = static_cast<std::size_t>(std::llround(t * rate));
        if (idx >= n) {
            break;
        }
        out[idx] += area * rate;
    }
    return Signal(std::move(out), rate);
}

Signal generate_rrc_signal(double b0, double duration, double rate, RngSeed seed, double rolloff,
                           int span_symbols)
{
    if (!(rate > 0.0)) {
        throw std::invalid_argument("sample rate must be positive");
    }
    if (!(b0 > 0.0) || b0 > 0.45 * rate / (1.0 + rolloff) || b0 > 0.45 * rate) {
        throw std::invalid_argument("RRC bandwidth too close to Nyquist");
    }
    const std::size_t n = sample_count(duration, rate);
    const FirDesign rrc = design_rrc(b0, rolloff, span_symbols, rate);
    const std::size_t skip = rrc.taps.size() - 1;
    std::mt19937_64 rng(seed.value);
    std::normal_distribution<double> normal(0.0, 1.0);
    FirFilter filter(rrc);
    // Unit-energy taps map unit-variance white noise to unit mean square.
    std::vector<double> out(n);
    for (std::size_t i = 0; i < skip; ++i) {
        filter.process(normal(rng));
    }
    for (auto& v : out) {
        v = filter.process(normal(rng));
    }
    return Signal(std::move(out), rate);
}

Signal generate_noise(const NoiseSpec& spec, double duration, double rate, RngSeed seed)
{
    spec.validate();
    switch (spec.kind) {
    case NoiseKind::thermal_gaussian:
        return generate_thermal(duration, spec.power, rate, seed);
    case NoiseKind::poisson_impulses:
        return generate_poisson_impulses(duration, spec.rate, std::sqrt(spec.power), rate, seed);
    case NoiseKind::periodic_gaussian_bursts:
        return generate_bursts(duration, spec.burst_period, spec.duty_cycle, spec.power, rate,
                               seed);
    }
    throw std::invalid_argument("unknown noise kind");
}

} // namespace onm
