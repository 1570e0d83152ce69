#include "onm/chains.hpp"
#include "onm/experiments.hpp"
#include "onm/generators.hpp"
#include "onm/metrics.hpp"
#include "onm/stats.hpp"

#include <doctest.h>

#include <cmath>

using namespace onm;

TEST_SUITE("chains") {

TEST_CASE("chain names round-trip")
{
    for (auto k : {ChainKind::linear, ChainKind::caf, ChainKind::derivative_caf, ChainKind::bandstop_caf,
                   ChainKind::shared_band_adic, ChainKind::deltasigma}) {
        CHECK(parse_chain_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_chain_kind("median"), std::invalid_argument);
}

TEST_CASE("default setup")
{
    const WidebandSetup s;
    CHECK_NOTHROW(s.validate());
    CHECK(s.frontend().is_stable());
    CHECK(s.bandstop().is_stable());
    CHECK(s.matched_filter().is_symmetric(1e-12));
    WidebandSetup bad = s;
    bad.band_stop_factor = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("thermal calibration gives the requested linear snr")
{
    const WidebandSetup setup;
    const double duration = 1.0;
    const Signal clean = generate_rrc_signal(setup.b0, duration, setup.rate, RngSeed{11});
    const Signal thermal = generate_thermal(duration, 1.0, setup.rate, RngSeed{12});
    const double ps = baseband_power(setup, clean);
    const double pn = baseband_power(setup, thermal);
    const Signal noise = scaled(thermal, std::sqrt(ps / 10.0 / pn));
    const auto m = measure_chain(setup, ChainKind::caf, clean, noise);
    CHECK(m.linear_twin.baseband_snr_db == doctest::Approx(10.0).epsilon(0.03));
    // Gaussian noise only: the nonlinear chain follows its linear twin.
    CHECK(std::abs(m.gain_db) <= 0.2);
    CHECK(m.skip == chain_warmup(setup, ChainKind::caf));
    CHECK(m.reference.size() == clean.size());
}

TEST_CASE("bypassed nonlinear chain equals its linear twin")
{
    const WidebandSetup setup;
    const Signal x = generate_thermal(0.3, 1.0, setup.rate, RngSeed{2})
                     + generate_poisson_impulses(0.3, 200.0, 0.01, setup.rate, RngSeed{3});
    for (auto k : {ChainKind::caf, ChainKind::bandstop_caf, ChainKind::shared_band_adic}) {
        const auto a = run_chain(setup, k, true, x);
        const auto b = run_chain(setup, k, true, x);
        CHECK(a.output.values() == b.output.values());
        CHECK(a.clip_fraction == 0.0);
        const auto active = run_chain(setup, k, false, x);
        CHECK(active.clip_fraction > 0.0);
    }
}

TEST_CASE("adjacent channel and narrowband noise have unit power")
{
    const WidebandSetup setup;
    const Signal a = adjacent_channel_noise(setup, 4.0, 0.5, 1.0, RngSeed{5});
    CHECK(mean_square(a.samples()) == doctest::Approx(1.0).epsilon(0.05));
    const Psd p = welch_psd(a, 4096);
    double in_band = 0.0;
    for (std::size_t i = 0; i < p.frequency.size(); ++i) {
        if (std::abs(p.frequency[i] - 4.0 * setup.b0) <= 0.5 * setup.b0) {
            in_band += p.density[i] * p.df;
        }
    }
    CHECK(in_band / p.total_power() >= 0.95);
    const Signal nb = narrowband_poisson_noise(setup, 100.0, 1.0, RngSeed{6});
    CHECK(nb.size() == sample_count(1.0, setup.rate));
}

}

TEST_SUITE("experiments") {

TEST_CASE("toy 1: the adic chain removes the impulse train")
{
    const auto cases = run_toy1(Toy1Config{});
    REQUIRE(cases.size() == 2);
    for (const auto& c : cases) {
        CHECK(c.linear_rms_error > 0.1);
        CHECK(c.ratio() < 0.05);
    }
}

TEST_CASE("toy 2: the derivative chain removes the square wave")
{
    const auto cases = run_toy2(Toy2Config{});
    REQUIRE(cases.size() == 2);
    for (const auto& c : cases) {
        CHECK(c.linear_rms_error > 0.1);
        CHECK(c.ratio() < 0.05);
    }
}

TEST_CASE("toy configuration checks")
{
    Toy1Config t;
    t.skip_periods = t.periods;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    Toy2Config u;
    u.band_stop_factor = u.band_pass_factor;
    CHECK_THROWS_AS(u.validate(), std::invalid_argument);
}

TEST_CASE("rms difference")
{
    const Signal a({1, 2, 3, 4}, 1.0), b({1, 2, 5, 2}, 1.0);
    CHECK(rms_difference(a, b) == doctest::Approx(std::sqrt(2.0)));
    CHECK(rms_difference(a, b, 2) == doctest::Approx(2.0));
}

}
