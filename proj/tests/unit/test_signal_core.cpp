#include "onm/generators.hpp"
#include "onm/signal.hpp"
#include "onm/signal_io.hpp"
#include "onm/spectrum.hpp"
#include "onm/stats.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

using namespace onm;

TEST_SUITE("signal-core") {

TEST_CASE("signal rejects non-finite samples and non-positive rates")
{
    CHECK_THROWS_AS(Signal({1.0, std::nan("")}, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(Signal({1.0, std::numeric_limits<double>::infinity()}, 100.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(Signal({1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Signal({1.0}, -5.0), std::invalid_argument);
    const Signal x({1.0, 2.0, 3.0}, 10.0);
    CHECK(x.size() == 3);
    CHECK(x.dt() == doctest::Approx(0.1));
    CHECK(x.duration() == doctest::Approx(0.3));
}

TEST_CASE("slice clamps and arithmetic requires matching shapes")
{
    const Signal x({1, 2, 3, 4}, 8.0);
    CHECK(x.slice(2, 10).size() == 2);
    CHECK(x.slice(5, 1).size() == 0);
    const Signal y({1, 1, 1, 1}, 8.0);
    CHECK((x + y)[3] == 5.0);
    CHECK((x - y)[0] == 0.0);
    CHECK(scaled(x, 2.0)[2] == 6.0);
    CHECK_THROWS_AS(x + Signal({1, 1}, 8.0), std::invalid_argument);
    CHECK_THROWS_AS(x + Signal({1, 1, 1, 1}, 9.0), std::invalid_argument);
}

TEST_CASE("derived seeds are distinct and repeatable")
{
    const RngSeed base{42};
    CHECK(derive_seed(base, 1, 2).value == derive_seed(base, 1, 2).value);
    CHECK(derive_seed(base, 1, 2).value != derive_seed(base, 2, 1).value);
    CHECK(derive_seed(base, 0, 0).value != derive_seed(RngSeed{43}, 0, 0).value);
}

TEST_CASE("thermal noise: zero power, variance and determinism")
{
    const Signal z = generate_thermal(0.1, 0.0, 1000.0, RngSeed{1});
    for (double v : z.samples()) {
        REQUIRE(v == 0.0);
    }
    const Signal x = generate_thermal(1.0, 1.0, 1.0e6, RngSeed{7});
    CHECK(x.size() == 1000000);
    CHECK(variance(x.samples()) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::abs(mean(x.samples())) < 0.005);
    const Signal y = generate_thermal(1.0, 1.0, 1.0e6, RngSeed{7});
    CHECK(x.values() == y.values());
    CHECK_THROWS_AS(generate_thermal(0.0, 1.0, 1000.0, RngSeed{1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_thermal(1.0, 1.0, 0.0, RngSeed{1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_thermal(1.0, -1.0, 1000.0, RngSeed{1}), std::invalid_argument);
}

TEST_CASE("poisson impulses: event count concentration and impulse convention")
{
    int inside = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Signal x = generate_poisson_impulses(1.0, 1000.0, 1.0, 1.0e6, RngSeed{seed});
        std::size_t nz = 0;
        for (double v : x.samples()) {
            nz += v != 0.0;
        }
        inside += nz >= 900 && nz <= 1100;
    }
    CHECK(inside >= 99);

    const Signal x = generate_poisson_impulses(1.0, 50.0, 1.0, 10000.0, RngSeed{3});
    CHECK(peakedness_dbg(x) > 20.0);
    CHECK_THROWS_AS(generate_poisson_impulses(1.0, 0.0, 1.0, 1000.0, RngSeed{1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_poisson_impulses(1.0, -3.0, 1.0, 1000.0, RngSeed{1}), std::invalid_argument);
}

TEST_CASE("poisson impulse areas scale with 1/dt")
{
    // One arrival per sample at most; each value is area / dt, so the mean
    // square of the values times dt^2 estimates the area variance.
    const double rate = 1000.0;
    const Signal x = generate_poisson_impulses(200.0, 10.0, 2.0, rate, RngSeed{5});
    double acc = 0.0;
    std::size_t n = 0;
    for (double v : x.samples()) {
        if (v != 0.0) {
            acc += (v / rate) * (v / rate);
            ++n;
        }
    }
    REQUIRE(n > 1000);
    CHECK(acc / static_cast<double>(n) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("bursts: duty cycle, power identity and degenerate duty")
{
    const double rate = 10000.0, period = 0.01;
    const Signal x = generate_bursts(10.0, period, 0.25, 2.0, rate, RngSeed{9});
    std::size_t nz = 0;
    for (double v : x.samples()) {
        nz += v != 0.0;
    }
    const double window = 0.25 * period * rate;
    CHECK(std::abs(static_cast<double>(nz) - 0.25 * static_cast<double>(x.size())) <= window * 1000);
    CHECK(static_cast<double>(nz) / static_cast<double>(x.size()) == doctest::Approx(0.25).epsilon(0.02));
    CHECK(mean_square(x.samples()) == doctest::Approx(0.25 * 2.0).epsilon(0.05));
    // First burst starts at t = 0.
    CHECK(x[0] != 0.0);
    CHECK(x[static_cast<std::size_t>(0.5 * period * rate)] == 0.0);

    const Signal full = generate_bursts(10.0, period, 1.0, 1.0, rate, RngSeed{9});
    CHECK(variance(full.samples()) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(peakedness_dbg(full)) < 0.1);

    CHECK_THROWS_AS(generate_bursts(1.0, period, 0.0, 1.0, rate, RngSeed{1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_bursts(1.0, period, 1.5, 1.0, rate, RngSeed{1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_bursts(1.0, 1.5 / rate, 0.5, 1.0, rate, RngSeed{1}), std::invalid_argument);
}

TEST_CASE("noise spec validation")
{
    NoiseSpec p{NoiseKind::poisson_impulses, 0.0, 0.0, 1.0, 1.0};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.rate = 10.0;
    CHECK_NOTHROW(p.validate());
    NoiseSpec b{NoiseKind::periodic_gaussian_bursts, 0.0, 0.01, 1.5, 1.0};
    CHECK_THROWS_AS(b.validate(), std::invalid_argument);
    b.duty_cycle = 0.5;
    CHECK_NOTHROW(b.validate());
    NoiseSpec t{NoiseKind::thermal_gaussian, 0.0, 0.0, 1.0, -1.0};
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    CHECK(parse_noise_kind(to_string(NoiseKind::periodic_gaussian_bursts)) == NoiseKind::periodic_gaussian_bursts);
}

TEST_CASE("periodic waveforms reproduce the closed-form peakedness constants")
{
    const double rate = 100000.0, period = 0.01;
    CHECK(std::abs(peakedness_dbg(generate_square(period, 1.0, rate, 1.0)) - oracle::square_dbg()) < 0.05);
    CHECK(std::abs(peakedness_dbg(generate_tone(period, 1.0, rate, 1.0)) - oracle::sine_dbg()) < 0.05);
    CHECK(std::abs(peakedness_dbg(generate_triangle(period, 1.0, rate, 1.0)) - oracle::triangle_dbg()) < 0.05);
    CHECK(std::abs(oracle::square_dbg() + 4.77) < 0.01);
    CHECK(std::abs(oracle::triangle_dbg() + 2.22) < 0.01);
    CHECK(std::abs(oracle::sine_dbg() + 3.01) < 0.01);
}

TEST_CASE("impulse train places one impulse per period")
{
    const double rate = 1000.0;
    const Signal x = generate_impulse_train(0.1, 0.5, rate, 1.0, 0.02);
    std::size_t nz = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0.0) {
            ++nz;
            CHECK(x[i] == doctest::Approx(0.5 * rate));
            CHECK((i % 100) == 20);
        }
    }
    CHECK(nz == 10);
    CHECK_THROWS_AS(generate_tone(1.5 / rate, 1.0, rate, 1.0), std::invalid_argument);
}

TEST_CASE("rrc signal: unit power, band limit and determinism")
{
    const double b0 = 1000.0, rate = 64000.0;
    const Signal x = generate_rrc_signal(b0, 20.0, rate, RngSeed{11});
    CHECK(mean_square(x.samples()) == doctest::Approx(1.0).epsilon(0.02));
    const Signal y = generate_rrc_signal(b0, 20.0, rate, RngSeed{11});
    CHECK(x.values() == y.values());

    // Hann-windowed periodogram check at the RRC stopband edge (1.3 b0 with rolloff 0.25).
    const std::size_t seg = 8192;
    std::vector<double> psd(seg / 2 + 1, 0.0);
    std::vector<double> w(seg);
    for (std::size_t n = 0; n < seg; ++n) {
        w[n] = 0.5 - 0.5 * std::cos(2 * oracle::pi * static_cast<double>(n) / static_cast<double>(seg));
    }
    for (std::size_t start = 0; start + seg <= x.size(); start += seg) {
        std::vector<double> frame(seg);
        for (std::size_t n = 0; n < seg; ++n) {
            frame[n] = w[n] * x[start + n];
        }
        const auto bins = rfft(frame, seg);
        for (std::size_t k = 0; k < bins.size(); ++k) {
            psd[k] += std::norm(bins[k]);
        }
    }
    const double df = rate / static_cast<double>(seg);
    double inband = 0.0;
    int n_in = 0;
    for (std::size_t k = 1; k * df < 0.5 * b0; ++k) {
        inband += psd[k];
        ++n_in;
    }
    inband /= n_in;
    double worst = 0.0;
    for (std::size_t k = static_cast<std::size_t>(1.3 * b0 / df) + 1; k < psd.size(); ++k) {
        worst = std::max(worst, psd[k]);
    }
    CHECK(10.0 * std::log10(worst / inband) < -40.0);
    CHECK_THROWS_AS(generate_rrc_signal(0.46 * rate, 1.0, rate, RngSeed{1}), std::invalid_argument);
}

TEST_CASE("csv and binary round trips")
{
    const Signal x = generate_thermal(0.01, 1.0, 8000.0, RngSeed{2});
    std::stringstream csv;
    write_csv(csv, x);
    CHECK(csv.str().rfind("t,amplitude\n", 0) == 0);
    const Signal a = read_csv(csv);
    CHECK(a.sample_rate() == doctest::Approx(8000.0));
    CHECK(a.values() == x.values());

    std::stringstream bin(std::ios::in | std::ios::out | std::ios::binary);
    write_binary(bin, x);
    const std::string bytes = bin.str();
    CHECK(bytes.size() == 16 + 8 * x.size());
    CHECK(bytes.substr(0, 8) == "ONMT0001");
    const Signal b = read_binary(bin);
    CHECK(b.sample_rate() == 8000.0);
    CHECK(b.values() == x.values());

    std::stringstream bad("t,amplitude\n0,1\n");
    CHECK_THROWS(read_csv(bad));
    std::stringstream junk("NOTMAGIC12345678");
    CHECK_THROWS(read_binary(junk));
}

TEST_CASE("file round trip picks the format from the contents")
{
    const auto dir = std::filesystem::temp_directory_path() / "onm_signal_io_test";
    std::filesystem::create_directories(dir);
    const Signal x = generate_tone(0.01, 1.0, 1000.0, 0.05);
    write_signal((dir / "x.bin").string(), x, SignalFormat::binary);
    write_signal((dir / "x.csv").string(), x, SignalFormat::csv);
    CHECK(read_signal((dir / "x.bin").string()).values() == x.values());
    CHECK(read_signal((dir / "x.csv").string()).values() == x.values());
    CHECK(parse_signal_format("bin") == SignalFormat::binary);
    CHECK(parse_signal_format("csv") == SignalFormat::csv);
    CHECK_THROWS_AS(parse_signal_format("wav"), std::invalid_argument);
    std::filesystem::remove_all(dir);
}

}
