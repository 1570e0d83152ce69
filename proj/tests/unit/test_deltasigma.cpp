#include "onm/deltasigma.hpp"
#include "onm/experiments.hpp"
#include "onm/generators.hpp"
#include "onm/iir.hpp"
#include "onm/stats.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace onm;

TEST_SUITE("deltasigma") {

TEST_CASE("modulator matches the reference recurrence")
{
    const Signal x = scaled(generate_thermal(0.01, 1.0, 1e6, RngSeed{3}), 0.4);
    DeltaSigmaModulator dsm(0.8);
    const Signal bits = dsm.modulate(x);
    const auto ref = oracle::delta_sigma(x.values(), 0.8);
    for (std::size_t i = 0; i < x.size(); ++i) {
        REQUIRE(bits[i] == static_cast<double>(ref[i]));
    }
}

TEST_CASE("bitstream is binary and its mean tracks a dc input")
{
    for (double level : {0.0, 0.5, -0.3}) {
        DeltaSigmaModulator dsm;
        const Signal bits = dsm.modulate(Signal(std::vector<double>(200000, level), 1e6));
        for (double b : bits.values()) {
            REQUIRE((b == 1.0 || b == -1.0));
        }
        CHECK(std::abs(mean(bits.samples()) - level) <= 0.01);
    }
}

TEST_CASE("inputs beyond the clip level are clamped and the loop stays bounded")
{
    DeltaSigmaModulator dsm(0.8);
    const Signal bits = dsm.modulate(Signal(std::vector<double>(100000, 5.0), 1e6));
    CHECK(mean(bits.samples()) == doctest::Approx(0.8).epsilon(0.01));
    CHECK(std::abs(dsm.integrator2()) < 100.0);
    dsm.reset();
    CHECK(dsm.integrator1() == 0.0);
    CHECK(dsm.integrator2() == 0.0);
}

TEST_CASE("bit packing is lsb first and round-trips")
{
    const std::vector<double> bits{1, -1, -1, 1, 1, 1, -1, -1, 1, -1};
    const auto packed = pack_bits(bits);
    REQUIRE(packed.size() == 2);
    CHECK(packed[0] == 0b00111001);
    CHECK(packed[1] == 0b00000001);
    CHECK(unpack_bits(packed, bits.size()) == bits);
}

TEST_CASE("co-designed front end factors multiply to the direct bessel design")
{
    const double rate = 2e6, fc = 5e4;
    const auto [analog, digital] = codesign_frontend(2, 2, fc, rate);
    const IirDesign direct = design_iir(IirFamily::bessel, FilterKind::lowpass, 4, {fc}, rate);
    const IirDesign both = cascade({analog, digital});
    CHECK(analog.is_stable());
    CHECK(digital.is_stable());
    for (double f = 1000.0; f < 4e5; f *= 1.3) {
        CHECK(std::abs(both.magnitude_db(f) - direct.magnitude_db(f)) <= 0.5);
    }
    // Bessel group delay is flatter through the passband than Butterworth's.
    const IirDesign butter = design_iir(IirFamily::butterworth, FilterKind::lowpass, 4, {fc}, rate);
    auto spread = [&](const IirDesign& d) {
        return d.group_delay(0.8 * fc) / d.group_delay(100.0);
    };
    CHECK(std::abs(spread(both) - 1.0) < std::abs(spread(butter) - 1.0));
}

TEST_CASE("pipeline configuration checks")
{
    PipelineConfig cfg;
    CHECK(cfg.decimation() == 200);
    cfg.output_rate = 3e4;
    CHECK_THROWS_AS(cfg.decimation(), std::invalid_argument);
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("pipeline output length and tone fidelity")
{
    PipelineConfig cfg;
    DeltaSigmaPipeline pipe(cfg);
    const double f = 500.0;
    const Signal x = generate_tone(1.0 / f, 0.3, cfg.modulator_rate, 0.2);
    const Signal y = pipe.process(x);
    REQUIRE(y.size() == x.size() / cfg.decimation());
    CHECK(y.sample_rate() == cfg.output_rate);

    // Least-squares fit of a sine at f; the residual is noise plus distortion.
    const std::size_t skip = y.size() / 4;
    double ss = 0, sc = 0, cc = 0, ys = 0, yc = 0;
    for (std::size_t i = skip; i < y.size(); ++i) {
        const double t = static_cast<double>(i) / cfg.output_rate;
        const double s = std::sin(2 * oracle::pi * f * t), c = std::cos(2 * oracle::pi * f * t);
        ss += s * s;
        sc += s * c;
        cc += c * c;
        ys += y[i] * s;
        yc += y[i] * c;
    }
    const double det = ss * cc - sc * sc;
    const double a = (ys * cc - yc * sc) / det, b = (yc * ss - ys * sc) / det;
    double sig = 0, res = 0;
    for (std::size_t i = skip; i < y.size(); ++i) {
        const double t = static_cast<double>(i) / cfg.output_rate;
        const double fit = a * std::sin(2 * oracle::pi * f * t) + b * std::cos(2 * oracle::pi * f * t);
        sig += fit * fit;
        res += std::pow(y[i] - fit, 2);
    }
    CHECK(std::hypot(a, b) == doctest::Approx(0.3).epsilon(0.02));
    CHECK(10 * std::log10(sig / res) >= 60.0);
}

TEST_CASE("active caf in the pipeline does not harm a clean tone")
{
    PipelineConfig cfg;
    const Signal x = generate_tone(1.0 / 700.0, 0.3, cfg.modulator_rate, 0.2);
    PipelineConfig bypassed = cfg;
    bypassed.bypass_caf = true;
    const Signal y = DeltaSigmaPipeline(cfg).process(x);
    const Signal z = DeltaSigmaPipeline(bypassed).process(x);
    const std::size_t skip = y.size() / 4;
    CHECK(rms_difference(y, z, skip) <= 0.01 * rms(z.slice(skip, z.size()).samples()));
}

TEST_CASE("experiment reports binary output and accurate dc")
{
    DeltaSigmaExperimentConfig cfg;
    cfg.duration = 0.1;
    const auto r = run_deltasigma_experiment(cfg);
    CHECK(r.binary);
    CHECK(r.dc_error <= 0.01);
    CHECK(r.output_samples == static_cast<std::size_t>(cfg.duration * cfg.pipeline.output_rate));
    CHECK(r.impulse_reduction_db >= 10.0);
}

}
