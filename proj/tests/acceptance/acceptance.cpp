// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "onm/adic.hpp"
#include "onm/caf.hpp"
#include "onm/chains.hpp"
#include "onm/experiments.hpp"
#include "onm/fir.hpp"
#include "onm/generators.hpp"
#include "onm/harness.hpp"
#include "onm/metrics.hpp"
#include "onm/qtf.hpp"
#include "onm/scenario.hpp"
#include "onm/stats.hpp"

#include "../oracles.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace onm;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double peakedness_tol_dbg = 0.05;
constexpr double gaussian_peakedness_tol_dbg = 0.1;
constexpr double quartile_tol = 0.05;
constexpr double reconstruction_tol = 1e-12;
constexpr double toy_ratio_max = 0.2;
constexpr double no_harm_capacity_tol = 0.05;  // bit/s/Hz
constexpr double pileup_min_gain_db = 10.0;
constexpr double pileup_max_gain_db_at_3lc = 1.0;
constexpr double pileup_duration_s = 6.0;
constexpr double lambda_c_nominal = 22.7;      // in units of b0
constexpr double lambda_c_tol = 0.10;
constexpr double superposition_floor_factor = 1.5;
constexpr double dc_tol = 0.01;
constexpr double impulse_reduction_min_db = 10.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Scenario sweep(const char* json)
{
    return parse_scenario(nlohmann::json::parse(json));
}

const ChainOutcome& chain(const PointResult& r, ChainKind k)
{
    for (const auto& c : r.chains) {
        if (c.chain == k) {
            return c;
        }
    }
    throw std::runtime_error("chain missing from point result");
}

double capacity_loss(const SnrMeasurement& m)
{
    return m.linear_twin.capacity_bits_per_s_per_hz - m.nonlinear.capacity_bits_per_s_per_hz;
}

Outcome peakedness_constants()
{
    const double rate = 100000.0, period = 0.01, duration = 10.0;
    const double sq = peakedness_dbg(generate_square(period, 1.0, rate, duration));
    const double tri = peakedness_dbg(generate_triangle(period, 1.0, rate, duration));
    const double sine = peakedness_dbg(generate_tone(period, 1.0, rate, duration));
    const double gauss = peakedness_dbg(generate_thermal(10.0, 1.0, rate, RngSeed{1}));
    const bool ok = std::abs(sq + 4.77) <= peakedness_tol_dbg && std::abs(tri + 2.22) <= peakedness_tol_dbg
                    && std::abs(sine + 3.01) <= peakedness_tol_dbg
                    && std::abs(gauss) <= gaussian_peakedness_tol_dbg;
    return {ok, "square " + fmt("%.3f", sq) + ", triangle " + fmt("%.3f", tri) + ", sine "
                    + fmt("%.3f", sine) + ", gaussian " + fmt("%.3f", gauss) + " dBG"};
}

Outcome quantile_tracking()
{
    const Signal x = generate_thermal(1.0, 1.0, 1e6, RngSeed{2});
    FenceTracker t;
    const std::size_t start = x.size() / 10;
    double s1 = 0, s2 = 0, s3 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        t.update(x[i]);
        if (i >= start) {
            s1 += t.q1();
            s2 += t.q2();
            s3 += t.q3();
        }
    }
    const double n = static_cast<double>(x.size() - start);
    const double e1 = oracle::quantile(x.values(), 0.25), e2 = oracle::quantile(x.values(), 0.5),
                 e3 = oracle::quantile(x.values(), 0.75);
    const double d = std::max({std::abs(s1 / n - e1), std::abs(s2 / n - e2), std::abs(s3 / n - e3)});
    return {d <= quartile_tol, "averaged Q1/Q2/Q3 " + fmt("%.4f", s1 / n) + "/" + fmt("%.4f", s2 / n) + "/"
                                   + fmt("%.4f", s3 / n) + ", max deviation " + fmt("%.4f", d)};
}

Outcome adic_intermittency()
{
    const double rate = 64000.0;
    const double duration = 1e5 / rate;
    const Signal x = generate_thermal(duration, 1.0, rate, RngSeed{3})
                     + generate_poisson_impulses(duration, 300.0, 0.01, rate, RngSeed{4})
                     + generate_bursts(duration, 0.05, 0.1, 25.0, rate, RngSeed{5})
                     + generate_tone(1.0 / 800.0, 2.0, rate, duration);
    AdicParams p;
    p.tau = 10.0 / rate;
    FeedbackAdic a(p, rate);
    std::size_t mismatches = 0, violations = 0, changed = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const bool active = a.active();
        const Fences f = a.current_fences();
        const double chi = a.chi();
        const double u = x[i] - chi;
        const bool violation = active && (u < f.lower || u > f.upper);
        const double y = a.step(x[i]);
        violations += violation;
        changed += y != x[i];
        if ((y != x[i]) != violation || (violation && y != chi)) {
            ++mismatches;
        }
    }
    return {mismatches == 0 && violations > 0,
            std::to_string(x.size()) + " samples, " + std::to_string(violations) + " fence violations, "
                + std::to_string(changed) + " changed samples, " + std::to_string(mismatches) + " mismatches"};
}

Outcome complement_identity()
{
    const double rate = 64000.0;
    const auto cfg = default_baseband_caf(1000.0, rate);
    const Signal x = generate_thermal(1.0, 1.0, rate, RngSeed{6});
    const Signal b = FirFilter(cfg.pair.band).apply(x);
    const Signal c = FirFilter(cfg.pair.complement).apply(x);
    const std::size_t d = cfg.pair.delay;
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double delayed = i >= d ? x[i - d] : 0.0;
        worst = std::max(worst, std::abs(b[i] + c[i] - delayed));
    }
    return {worst < reconstruction_tol, "max abs error " + fmt("%.3g", worst)};
}

Outcome toy(const std::vector<ToyCase>& cases)
{
    bool ok = !cases.empty();
    std::string detail;
    for (const auto& c : cases) {
        ok = ok && c.ratio() <= toy_ratio_max;
        detail += (detail.empty() ? "" : ", ") + c.phase + " ratio " + fmt("%.4g", c.ratio());
    }
    return {ok, detail};
}

Outcome no_harm()
{
    const Scenario s = load_scenario(resolve_scenario("no-harm"));
    const auto r = run_scenario(s, {"", SignalFormat::csv, false});
    bool ok = r.points.size() == 4;
    double worst = -1e9;
    for (const auto& p : r.points) {
        const double loss = capacity_loss(chain(p, ChainKind::caf).measurement);
        worst = std::max(worst, loss);
        ok = ok && loss <= no_harm_capacity_tol;
    }
    return {ok, "thermal SNR {0,10,20,30} dB, worst capacity loss " + fmt("%.4f", worst) + " bit/s/Hz"};
}

Outcome pileup_trend()
{
    Scenario s = sweep(R"({
        "schema_version": 1, "name": "acceptance-pileup", "experiment": "snr-sweep", "seed": 11,
        "chains": ["caf"],
        "noise": [
            {"kind": "thermal", "snr_db": 30},
            {"kind": "poisson", "outlier_to_thermal_db": 20, "lambda_factor": 0.01}
        ],
        "sweep": {"lambda_factor": [0.01, 0.1, 1, 3]},
        "outputs": {"psd": false, "svg": false, "traces": false}
    })");
    s.duration = pileup_duration_s;
    std::vector<double> gains;
    for (const auto& pt : expand_grid(s)) {
        gains.push_back(chain(run_point(s, pt), ChainKind::caf).measurement.gain_db);
    }
    bool ok = gains.size() == 4 && gains.front() >= pileup_min_gain_db
              && gains.back() <= pileup_max_gain_db_at_3lc;
    for (std::size_t i = 1; i < gains.size(); ++i) {
        ok = ok && gains[i] <= gains[i - 1];
    }
    std::string detail = "gain at lambda_c x {0.01,0.1,1,3}:";
    for (double g : gains) {
        detail += " " + fmt("%.2f", g);
    }
    return {ok, detail + " dB"};
}

Outcome lambda_c_calibration()
{
    const WidebandSetup setup;
    const double ratio = pileup_threshold(setup.frontend()).lambda_c / setup.b0;
    return {std::abs(ratio / lambda_c_nominal - 1.0) <= lambda_c_tol,
            "lambda_c = " + fmt("%.3f", ratio) + " b0"};
}

Outcome adjacent_channel()
{
    Scenario s = load_scenario(resolve_scenario("adjacent-channel"));
    s.sweep.outlier_to_thermal_db = {20.0};
    const auto with = run_point(s, expand_grid(s).front());
    const double g_caf = chain(with, ChainKind::caf).measurement.gain_db;
    const double g_bs = chain(with, ChainKind::bandstop_caf).measurement.gain_db;

    Scenario quiet = s;
    quiet.sweep.outlier_to_thermal_db.clear();
    quiet.noise.erase(quiet.noise.begin() + 2);
    const auto without = run_point(quiet, expand_grid(quiet).front());
    const double loss_caf = capacity_loss(chain(without, ChainKind::caf).measurement);
    const double loss_bs = capacity_loss(chain(without, ChainKind::bandstop_caf).measurement);

    const bool ok = g_bs > g_caf && loss_caf <= no_harm_capacity_tol && loss_bs <= no_harm_capacity_tol;
    return {ok, "gain caf " + fmt("%.2f", g_caf) + " dB, bandstop-caf " + fmt("%.2f", g_bs)
                    + " dB; without impulses capacity loss " + fmt("%.4f", loss_caf) + " / "
                    + fmt("%.4f", loss_bs) + " bit/s/Hz"};
}

Outcome shared_band()
{
    const Scenario narrow = sweep(R"({
        "schema_version": 1, "name": "acceptance-shared", "experiment": "snr-sweep", "seed": 1,
        "duration": 1.0, "chains": ["shared-band-adic"],
        "noise": [
            {"kind": "thermal", "snr_db": 30},
            {"kind": "narrowband-poisson", "lambda_factor": 0.1, "outlier_to_thermal_db": 40}
        ],
        "outputs": {"psd": false, "svg": false, "traces": false}
    })");
    const Scenario wide = sweep(R"({
        "schema_version": 1, "name": "acceptance-wide", "experiment": "snr-sweep", "seed": 1,
        "duration": 1.0, "chains": ["caf"],
        "noise": [
            {"kind": "thermal", "snr_db": 30},
            {"kind": "poisson", "lambda_factor": 0.1, "outlier_to_thermal_db": 40}
        ],
        "outputs": {"psd": false, "svg": false, "traces": false}
    })");
    const double g_shared =
        chain(run_point(narrow, expand_grid(narrow).front()), ChainKind::shared_band_adic).measurement.gain_db;
    const double g_wide = chain(run_point(wide, expand_grid(wide).front()), ChainKind::caf).measurement.gain_db;
    return {g_shared > 0.0 && g_shared < g_wide,
            "lambda_c/10, outlier-to-thermal 40 dB: shared-band gain " + fmt("%.2f", g_shared)
                + " dB, wideband caf gain " + fmt("%.2f", g_wide) + " dB"};
}

Outcome deltasigma()
{
    const Scenario s = load_scenario(resolve_scenario("deltasigma"));
    const auto r = run_deltasigma_experiment(s.deltasigma);
    const bool ok = r.binary && r.dc_error <= dc_tol
                    && r.superposition_residual <= superposition_floor_factor * r.quantization_floor
                    && r.impulse_reduction_db >= impulse_reduction_min_db;
    return {ok, std::string("binary ") + (r.binary ? "yes" : "no") + ", dc error " + fmt("%.4g", r.dc_error)
                    + ", superposition residual " + fmt("%.3g", r.superposition_residual) + " vs floor "
                    + fmt("%.3g", r.quantization_floor) + ", impulse reduction "
                    + fmt("%.2f", r.impulse_reduction_db) + " dB"};
}

std::map<std::string, std::string> csv_files(const fs::path& root)
{
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file() && e.path().extension() == ".csv") {
            std::ifstream in(e.path(), std::ios::binary);
            std::ostringstream s;
            s << in.rdbuf();
            out[fs::relative(e.path(), root).string()] = s.str();
        }
    }
    return out;
}

Outcome determinism()
{
    const fs::path base = fs::temp_directory_path() / "onm-acceptance-determinism";
    fs::remove_all(base);
    std::size_t files = 0, differing = 0;
    const auto names = bundled_scenarios();
    for (const auto& name : names) {
        const Scenario s = load_scenario(resolve_scenario(name));
        run_scenario(s, {base / "a", SignalFormat::csv, true});
        run_scenario(s, {base / "b", SignalFormat::csv, true});
    }
    const auto a = csv_files(base / "a");
    const auto b = csv_files(base / "b");
    for (const auto& [path, bytes] : a) {
        ++files;
        const auto it = b.find(path);
        differing += it == b.end() || it->second != bytes;
    }
    differing += b.size() != a.size();
    fs::remove_all(base);
    return {files > 0 && differing == 0, std::to_string(names.size()) + " scenarios, " + std::to_string(files)
                                             + " csv files, " + std::to_string(differing) + " differing"};
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "peakedness constants", 1.0, peakedness_constants},
        {2, "quantile tracking", 5.0, quantile_tracking},
        {3, "adic intermittency", 1.0, adic_intermittency},
        {4, "complement identity", 1.0, complement_identity},
        {5, "toy example 1", 5.0, [] { return toy(run_toy1(Toy1Config{})); }},
        {6, "toy example 2", 5.0, [] { return toy(run_toy2(Toy2Config{})); }},
        {7, "no harm", 30.0, no_harm},
        {8, "pileup trend", 300.0, pileup_trend},
        {9, "lambda_c calibration", 1.0, lambda_c_calibration},
        {10, "adjacent channel", 120.0, adjacent_channel},
        {11, "shared band", 120.0, shared_band},
        {12, "delta-sigma pipeline", 60.0, deltasigma},
        {13, "determinism", 1800.0, determinism},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt <= c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("%s %2d %-22s %s [%.2f s / %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), dt, c.budget_s, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
