#include "onm/adic.hpp"
#include "onm/fir.hpp"
#include "onm/generators.hpp"
#include "onm/stats.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

using namespace onm;

namespace {

AdicParams external(double tau, double lo, double hi)
{
    AdicParams p;
    p.tau = tau;
    p.source = FenceSource::external;
    p.external_lower = lo;
    p.external_upper = hi;
    return p;
}

} // namespace

TEST_SUITE("adic") {

TEST_CASE("blanking function")
{
    const BlankingRange r(-1.0, 1.0);
    CHECK(blank(0.5, r) == 0.5);
    CHECK(blank(2.0, r) == 0.0);
    CHECK(blank(1.0, r) == 1.0);
    CHECK(blank(-1.0, r) == -1.0);
    CHECK(blank(-1.0000001, r) == 0.0);
    CHECK_THROWS_AS(BlankingRange(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("basic adic passes in-range samples and replaces outliers by the dcl")
{
    const Signal x = generate_thermal(0.5, 1.0, 20000.0, RngSeed{4});
    std::vector<double> v(x.values());
    v[5000] = 50.0;
    v[7000] = -50.0;
    BasicAdic a;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& t = a.tracker();
        const bool ready = t.ready();
        const auto f = t.fences();
        const double dcl = t.dcl();
        const double y = a.step(v[i]);
        if (!ready) {
            REQUIRE(y == v[i]);
        } else if (v[i] < f.lower || v[i] > f.upper) {
            REQUIRE(y == dcl);
            REQUIRE(a.last_clipped());
        } else {
            REQUIRE(y == v[i]);
        }
    }
    CHECK(a.clipped_count() >= 2);
}

TEST_CASE("basic adic agrees with the hampel oracle on a chirp with impulses")
{
    const double rate = 20000.0;
    std::vector<double> v(40000);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = static_cast<double>(i) / rate;
        v[i] = 0.2 * std::sin(2 * oracle::pi * (200.0 + 50.0 * t) * t);
    }
    const std::vector<double> clean = v;
    for (std::size_t i = 3000; i < v.size(); i += 977) {
        v[i] += (i % 2 ? 5.0 : -5.0);
    }
    const Signal x(v, rate);
    FenceParams p;
    p.beta = 3.0;
    BasicAdic a(p);
    const Signal y = a.apply(x);
    const Signal h = hampel_oracle(x, 21, 3.0);
    double ea = 0.0, eh = 0.0, touched = 0;
    for (std::size_t i = 2048; i < v.size(); ++i) {
        ea += std::pow(y[i] - clean[i], 2);
        eh += std::pow(h[i] - clean[i], 2);
        touched += y[i] != x[i] && (i - 3000) % 977 != 0;
    }
    // Impulses removed, chirp samples untouched.
    CHECK(touched == 0);
    const double rms_in = std::sqrt(oracle::mean_square(clean, 2048));
    CHECK(std::abs(std::sqrt(ea) - std::sqrt(eh)) / std::sqrt(static_cast<double>(v.size() - 2048)) <= 0.1 * rms_in);
}

TEST_CASE("feedback adic with fixed fences matches the reference recurrence")
{
    const double rate = 10000.0, tau = 0.001;
    const Signal x = generate_thermal(1.0, 1.0, rate, RngSeed{9});
    FeedbackAdic a(external(tau, -1.2, 1.2), rate);
    oracle::FixedFenceAdic ref{1.0 / (tau * rate), -1.2, 1.2};
    std::size_t clipped = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double y = a.step(x[i]);
        REQUIRE(y == ref.step(x[i]));
        REQUIRE(a.chi() == ref.chi);
        clipped += a.last_clipped();
    }
    CHECK(clipped > 0);
    CHECK(clipped == a.clipped_count());
}

TEST_CASE("out-of-range samples freeze chi; in-range samples pass bit-exactly")
{
    FeedbackAdic a(external(0.01, -1.0, 1.0), 1000.0);
    a.step(0.5);
    const double chi = a.chi();
    CHECK(a.step(10.0) == chi);
    CHECK(a.chi() == chi);
    CHECK(a.step(-10.0) == chi);
    CHECK(a.chi() == chi);
    CHECK(a.step(0.25) == 0.25);
    CHECK(a.chi() != chi);
}

TEST_CASE("with infinite fences the adic is an identity and chi is a first-order lowpass")
{
    const double rate = 8000.0, tau = 0.002;
    const double inf = std::numeric_limits<double>::infinity();
    const Signal x = generate_thermal(0.5, 1.0, rate, RngSeed{13});
    FeedbackAdic a(external(tau, -inf, inf), rate);
    const auto chi = oracle::first_order_lowpass(x.values(), 1.0 / (tau * rate));
    for (std::size_t i = 0; i < x.size(); ++i) {
        REQUIRE(a.chi() == doctest::Approx(chi[i]).epsilon(1e-12));
        REQUIRE(a.step(x[i]) == x[i]);
    }
}

TEST_CASE("chi follows a tone at the corner frequency 3 dB down")
{
    const double rate = 100000.0, tau = 1e-3;
    const double f = 1.0 / (2 * oracle::pi * tau);
    const double inf = std::numeric_limits<double>::infinity();
    const Signal x = generate_tone(1.0 / f, 1.0, rate, 0.2);
    FeedbackAdic a(external(tau, -inf, inf), rate);
    double peak = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        a.step(x[i]);
        if (i > x.size() / 2) {
            peak = std::max(peak, std::abs(a.chi()));
        }
    }
    CHECK(std::abs(20 * std::log10(peak) + 3.01) < 0.2);
}

TEST_CASE("intermittency: changed samples are exactly the fence violations")
{
    const double rate = 64000.0;
    const Signal x = generate_thermal(1.0, 1.0, rate, RngSeed{1})
                     + generate_poisson_impulses(1.0, 500.0, 0.01, rate, RngSeed{2});
    AdicParams p;
    p.tau = 10.0 / rate;
    FeedbackAdic a(p, rate);
    std::vector<AdicTraceRow> trace;
    const Signal y = a.apply(x, &trace);
    std::size_t violations = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& r = trace[i];
        const bool outside = r.u < r.lower || r.u > r.upper;
        REQUIRE(r.clipped == (y[i] != x[i]));
        if (r.clipped) {
            REQUIRE(outside);
        }
        violations += r.clipped;
    }
    CHECK(violations > 0);
    std::ostringstream csv;
    write_adic_trace_csv(csv, {trace.begin(), trace.begin() + 2});
    CHECK(csv.str().rfind("n,x,u,alpha_minus,alpha_plus,chi,clipped\n", 0) == 0);
}

TEST_CASE("self-tracked fences settle at the gaussian tukey fences")
{
    const double rate = 64000.0;
    const Signal x = generate_thermal(2.0, 1.0, rate, RngSeed{5});
    AdicParams p;
    p.tau = 1.0;  // chi stays near zero, so u is close to x
    FeedbackAdic a(p, rate);
    a.apply(x);
    const auto f = a.current_fences();
    const double want = oracle::gaussian_q3 * (1.0 + 2.0 * 1.5);
    CHECK(f.upper == doctest::Approx(want).epsilon(0.15));
    CHECK(f.lower == doctest::Approx(-want).epsilon(0.15));
}

TEST_CASE("wider fences clip less")
{
    const double rate = 64000.0;
    const Signal x = generate_thermal(1.0, 1.0, rate, RngSeed{7})
                     + generate_poisson_impulses(1.0, 2000.0, 0.002, rate, RngSeed{8});
    std::size_t prev = std::numeric_limits<std::size_t>::max();
    for (double beta : {1.0, 1.5, 2.0, 3.0}) {
        AdicParams p;
        p.tau = 20.0 / rate;
        p.fences.beta = beta;
        FeedbackAdic a(p, rate);
        a.apply(x);
        CHECK(a.clipped_count() <= prev);
        prev = a.clipped_count();
    }
}

TEST_CASE("unit-level no-harm on gaussian input with beta 3")
{
    const double rate = 64000.0;
    const Signal x = generate_thermal(2.0, 1.0, rate, RngSeed{31});
    AdicParams p;
    p.tau = 10.0 / rate;
    p.fences.beta = 3.0;
    FeedbackAdic a(p, rate);
    const Signal y = a.apply(x);
    const std::size_t warm = p.fences.calibration_length;
    CHECK(static_cast<double>(a.clipped_count()) / static_cast<double>(x.size() - warm) <= 0.005);
    double err = 0.0;
    for (std::size_t i = warm; i < x.size(); ++i) {
        err += std::pow(y[i] - x[i], 2);
    }
    // Rare clips leave the distortion at least 30 dB below the input.
    CHECK(err / static_cast<double>(x.size() - warm) <= 1e-3 * mean_square(x.samples()));
}

TEST_CASE("wide fences pass a clean band-limited signal bit-exactly")
{
    const double rate = 64000.0;
    const Signal x = generate_rrc_signal(1000.0, 1.0, rate, RngSeed{3});
    AdicParams p;
    p.tau = 0.5 / (2 * oracle::pi * 1200.0);
    p.fences.beta = 6.0;
    p.fences.floor = 0.01;
    FeedbackAdic a(p, rate);
    const Signal y = a.apply(x);
    CHECK(a.clipped_count() == 0);
    CHECK(y.values() == x.values());
}

TEST_CASE("parameter validation")
{
    AdicParams p;
    p.tau = 1.0 / 1000.0;
    CHECK_THROWS_AS(FeedbackAdic(p, 1000.0), std::invalid_argument);
    CHECK_THROWS_AS(FeedbackAdic(external(0.1, 1.0, -1.0), 1000.0), std::invalid_argument);
    CHECK_NOTHROW(FeedbackAdic(external(0.1, -1.0, 1.0), 1000.0));
}

TEST_CASE("spectral inversion: clipping the complement's spike leaves the negated band filter")
{
    const double rate = 16000.0;
    const auto pair = make_complement(design_fir_lowpass(200.0, 100.0, rate));
    const std::size_t lead = 4096;
    const Signal noise = generate_thermal(static_cast<double>(lead) / rate, 0.05 * 0.05, rate, RngSeed{2});
    std::vector<double> padded(noise.values());
    padded.insert(padded.end(), pair.complement.taps.begin(), pair.complement.taps.end());
    BasicAdic a;
    const Signal y = a.apply(Signal(padded, rate));
    const std::vector<double> out(y.values().begin() + lead, y.values().end());
    std::vector<double> mo, ml;
    for (double f = 0.0; f < rate / 2; f += 50.0) {
        mo.push_back(oracle::response_magnitude(out, f, rate));
        ml.push_back(oracle::response_magnitude(pair.band.taps, f, rate));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < mo.size(); ++i) {
        mx += mo[i];
        my += ml[i];
    }
    mx /= static_cast<double>(mo.size());
    my /= static_cast<double>(ml.size());
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < mo.size(); ++i) {
        sxy += (mo[i] - mx) * (ml[i] - my);
        sxx += (mo[i] - mx) * (mo[i] - mx);
        syy += (ml[i] - my) * (ml[i] - my);
    }
    CHECK(a.clipped_count() >= 1);
    CHECK(sxy / std::sqrt(sxx * syy) >= 0.9);
}

}
