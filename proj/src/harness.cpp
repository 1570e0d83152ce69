#include "onm/harness.hpp"

#include "onm/error.hpp"
#include "onm/generators.hpp"
#include "onm/metrics.hpp"
#include "onm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace onm {

namespace fs = std::filesystem;

namespace {

constexpr std::array<SweepAxis, sweep_axis_count> all_axes{
    SweepAxis::thermal_snr_db, SweepAxis::outlier_to_thermal_db, SweepAxis::lambda_factor,
    SweepAxis::duty_cycle,     SweepAxis::psd_db,                SweepAxis::beta,
    SweepAxis::tau_scale};

constexpr std::size_t trace_length = 2048;

double db_to_ratio(double db)
{
    return std::pow(10.0, db / 10.0);
}

std::string point_tag(std::size_t index)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "point-%03zu", index);
    return buf;
}

class OutputWriter {
public:
    OutputWriter(fs::path dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled)
    {
        if (enabled_) {
            fs::create_directories(dir_);
        }
    }

    const fs::path& dir() const noexcept { return dir_; }
    bool enabled() const noexcept { return enabled_; }

    void text(const fs::path& rel, const std::string& content)
    {
        if (!enabled_) {
            return;
        }
        const fs::path p = prepare(rel);
        std::ofstream out(p, std::ios::binary);
        out << content;
        if (!out) {
            throw std::runtime_error("cannot write '" + p.string() + "'");
        }
    }

    void svg(const fs::path& rel, const LinePlot& plot)
    {
        if (enabled_) {
            write_svg(prepare(rel), plot);
        }
    }

    void signal(const fs::path& rel, const Signal& x, SignalFormat format)
    {
        if (enabled_) {
            write_signal(prepare(rel).string(), x, format);
        }
    }

    void bytes(const fs::path& rel, const std::vector<std::uint8_t>& data)
    {
        if (!enabled_) {
            return;
        }
        const fs::path p = prepare(rel);
        std::ofstream out(p, std::ios::binary);
        out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
        if (!out) {
            throw std::runtime_error("cannot write '" + p.string() + "'");
        }
    }

    std::vector<fs::path> files;

private:
    fs::path prepare(const fs::path& rel)
    {
        const fs::path p = dir_ / rel;
        fs::create_directories(p.parent_path());
        files.push_back(p);
        return p;
    }

    fs::path dir_;
    bool enabled_;
};

std::string optional_number(const std::optional<double>& v)
{
    return v ? format_number(*v) : std::string();
}

void apply_axis(GridPoint& p, SweepAxis axis, double v)
{
    for (auto& n : p.noise) {
        switch (axis) {
        case SweepAxis::thermal_snr_db:
            if (n.kind == NoiseComponentKind::thermal) n.snr_db = v;
            break;
        case SweepAxis::outlier_to_thermal_db:
            if (n.is_outlier()) n.outlier_to_thermal_db = v;
            break;
        case SweepAxis::lambda_factor:
            if (n.is_outlier()) n.lambda_factor = v;
            break;
        case SweepAxis::duty_cycle:
            if (n.kind == NoiseComponentKind::bursts) n.duty_cycle = v;
            break;
        case SweepAxis::psd_db:
            if (n.kind == NoiseComponentKind::adjacent_channel) n.psd_db = v;
            break;
        default: break;
        }
    }
    if (axis == SweepAxis::beta) {
        p.setup.fences.beta = v;
        p.setup.shared_fences.beta = v;
    } else if (axis == SweepAxis::tau_scale) {
        p.setup.tau_scale = v;
        p.setup.shared_tau_scale = v;
    }
}

void fill_values(GridPoint& p)
{
    auto first = [&](auto pred, auto field) -> std::optional<double> {
        for (const auto& n : p.noise) {
            if (pred(n)) {
                return field(n);
            }
        }
        return std::nullopt;
    };
    auto set = [&](SweepAxis a, std::optional<double> v) { p.values[static_cast<std::size_t>(a)] = v; };
    set(SweepAxis::thermal_snr_db,
        first([](const NoiseComponent& n) { return n.kind == NoiseComponentKind::thermal; },
              [](const NoiseComponent& n) { return n.snr_db; }));
    set(SweepAxis::outlier_to_thermal_db,
        first([](const NoiseComponent& n) { return n.is_outlier(); },
              [](const NoiseComponent& n) { return n.outlier_to_thermal_db; }));
    set(SweepAxis::lambda_factor,
        first([](const NoiseComponent& n) { return n.is_outlier(); },
              [](const NoiseComponent& n) { return n.lambda_factor; }));
    set(SweepAxis::duty_cycle,
        first([](const NoiseComponent& n) { return n.kind == NoiseComponentKind::bursts; },
              [](const NoiseComponent& n) { return n.duty_cycle; }));
    set(SweepAxis::psd_db,
        first([](const NoiseComponent& n) { return n.kind == NoiseComponentKind::adjacent_channel; },
              [](const NoiseComponent& n) { return n.psd_db; }));
    set(SweepAxis::beta, p.setup.fences.beta);
    set(SweepAxis::tau_scale, p.setup.tau_scale);
}

Signal raw_component(const WidebandSetup& s, const NoiseComponent& n, double duration, RngSeed seed)
{
    const double lc = s.lambda_c();
    switch (n.kind) {
    case NoiseComponentKind::thermal: return generate_thermal(duration, 1.0, s.rate, seed);
    case NoiseComponentKind::poisson:
        return generate_poisson_impulses(duration, n.lambda_factor * lc, 1.0, s.rate, seed);
    case NoiseComponentKind::bursts:
        return generate_bursts(duration, 1.0 / (n.lambda_factor * lc), n.duty_cycle, 1.0, s.rate, seed);
    case NoiseComponentKind::narrowband_poisson:
        return narrowband_poisson_noise(s, n.lambda_factor * lc, duration, seed);
    case NoiseComponentKind::adjacent_channel:
        return adjacent_channel_noise(s, n.center_factor, n.bandwidth_factor, duration, seed);
    }
    throw std::logic_error("unhandled noise component");
}

Signal calibrate(const WidebandSetup& s, const Signal& x, double target, const std::string& what)
{
    const double p = baseband_power(s, x);
    if (!(p > 0.0)) {
        throw std::runtime_error(what + " has no baseband power in this realization "
                                        "(no events; increase the duration or rate)");
    }
    return scaled(x, std::sqrt(target / p));
}

// ---- SNR sweeps ----------------------------------------------------------

std::string point_row_prefix(const PointResult& r, const WidebandSetup& base)
{
    const auto& p = r.point;
    std::string row = std::to_string(p.index);
    for (SweepAxis a : all_axes) {
        row += "," + optional_number(p.value(a));
        if (a == SweepAxis::lambda_factor) {
            const auto lf = p.value(a);
            row += "," + (lf ? format_number(*lf * base.lambda_c()) : std::string());
        }
    }
    return row;
}

void write_point_files(OutputWriter& w, const Scenario& s, const PointResult& r)
{
    const std::string tag = point_tag(r.point.index);
    for (const auto& c : r.chains) {
        const auto& m = c.measurement;
        const std::string name = tag + "-" + to_string(c.chain);
        if (s.outputs.psd) {
            const Signal e_lin = (m.linear_output - m.reference).slice(m.skip, m.reference.size());
            const Signal e_nl = (m.nonlinear_output - m.reference).slice(m.skip, m.reference.size());
            const Psd a = welch_psd(e_lin, s.outputs.psd_segment);
            const Psd b = welch_psd(e_nl, s.outputs.psd_segment);
            std::string csv = "frequency_hz,linear_error_psd,nonlinear_error_psd\n";
            for (std::size_t i = 0; i < a.frequency.size(); ++i) {
                csv += format_number(a.frequency[i]) + "," + format_number(a.density[i]) + ","
                       + format_number(b.density[i]) + "\n";
            }
            w.text(fs::path("psd") / (name + ".csv"), csv);
            if (s.outputs.svg) {
                LinePlot plot{"Error PSD, " + tag + ", " + to_string(c.chain), "frequency (Hz)",
                              "PSD (dB re 1/Hz)", true, {}};
                PlotSeries ls{"linear", {}, {}}, ns{to_string(c.chain), {}, {}};
                for (std::size_t i = 1; i < a.frequency.size(); ++i) {
                    ls.x.push_back(a.frequency[i]);
                    ls.y.push_back(10.0 * std::log10(std::max(a.density[i], 1e-30)));
                    ns.x.push_back(a.frequency[i]);
                    ns.y.push_back(10.0 * std::log10(std::max(b.density[i], 1e-30)));
                }
                plot.series = {ls, ns};
                w.svg(fs::path("psd") / (name + ".svg"), plot);
            }
        }
        if (s.outputs.traces) {
            const std::size_t n = std::min(trace_length, m.reference.size() - m.skip);
            const double fs_ = m.reference.sample_rate();
            std::string csv = "t,reference,linear_output,nonlinear_output\n";
            for (std::size_t i = m.skip; i < m.skip + n; ++i) {
                csv += format_number(static_cast<double>(i) / fs_) + "," + format_number(m.reference[i])
                       + "," + format_number(m.linear_output[i]) + ","
                       + format_number(m.nonlinear_output[i]) + "\n";
            }
            w.text(fs::path("traces") / (name + ".csv"), csv);
        }
    }
}

/// The plotted x axis: outlier-to-thermal power when swept, else the first
/// axis with more than one value.
std::optional<SweepAxis> plot_axis(const SweepAxes& axes)
{
    if (axes.outlier_to_thermal_db.size() > 1) {
        return SweepAxis::outlier_to_thermal_db;
    }
    for (SweepAxis a : all_axes) {
        if (axis_values(axes, a).size() > 1) {
            return a;
        }
    }
    return std::nullopt;
}

void write_sweep_plots(OutputWriter& w, const Scenario& s, const std::vector<PointResult>& results)
{
    const auto xa = plot_axis(s.sweep);
    if (!xa) {
        return;
    }
    // Series key: chain plus the values of every other swept axis.
    std::map<std::string, std::pair<PlotSeries, PlotSeries>> groups;  // gain, capacity
    std::map<std::string, PlotSeries> linear_capacity;
    std::vector<std::string> order;
    for (const auto& r : results) {
        std::string others;
        for (SweepAxis a : all_axes) {
            if (a != *xa && axis_values(s.sweep, a).size() > 1) {
                char buf[64];
                std::snprintf(buf, sizeof buf, " %s=%g", to_string(a), *r.point.value(a));
                others += buf;
            }
        }
        const double x = *r.point.value(*xa);
        for (const auto& c : r.chains) {
            const std::string key = std::string(to_string(c.chain)) + others;
            if (!groups.count(key)) {
                order.push_back(key);
                groups[key] = {PlotSeries{key, {}, {}}, PlotSeries{key, {}, {}}};
                linear_capacity[key] = PlotSeries{c.measurement.linear_twin.chain + others, {}, {}};
            }
            auto& g = groups[key];
            g.first.x.push_back(x);
            g.first.y.push_back(c.measurement.gain_db);
            g.second.x.push_back(x);
            g.second.y.push_back(c.measurement.nonlinear.capacity_bits_per_s_per_hz);
            linear_capacity[key].x.push_back(x);
            linear_capacity[key].y.push_back(c.measurement.linear_twin.capacity_bits_per_s_per_hz);
        }
    }
    const bool log_x = *xa == SweepAxis::lambda_factor;
    LinePlot gain{s.name + ": SNR gain over the linear twin", to_string(*xa), "gain (dB)", log_x, {}};
    LinePlot cap{s.name + ": capacity proxy", to_string(*xa), "bit/s/Hz", log_x, {}};
    for (const auto& key : order) {
        gain.series.push_back(groups[key].first);
        cap.series.push_back(groups[key].second);
        cap.series.push_back(linear_capacity[key]);
    }
    w.svg("gain.svg", gain);
    w.svg("capacity.svg", cap);
}

void run_sweep(const Scenario& s, OutputWriter& w, RunResult& out)
{
    const auto grid = expand_grid(s);
    std::string csv = sweep_results_header() + "\n";
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : grid) {
        PointResult r = run_point(s, p);
        const std::string prefix = point_row_prefix(r, s.setup);
        nlohmann::json chains = nlohmann::json::array();
        for (const auto& c : r.chains) {
            const auto& m = c.measurement;
            for (const auto* rep : {&m.linear_twin, &m.nonlinear}) {
                csv += prefix + "," + to_string(c.chain) + ","
                       + (rep == &m.linear_twin ? "linear-twin" : "nonlinear") + ","
                       + metrics_csv_row(*rep) + "," + format_number(m.gain_db) + "\n";
            }
            chains.push_back({{"chain", to_string(c.chain)},
                              {"gain_db", m.gain_db},
                              {"linear_twin", m.linear_twin.to_json()},
                              {"nonlinear", m.nonlinear.to_json()}});
        }
        nlohmann::json params = nlohmann::json::object();
        for (SweepAxis a : all_axes) {
            if (const auto v = p.value(a)) {
                params[to_string(a)] = *v;
            }
        }
        points.push_back({{"index", p.index},
                          {"parameters", params},
                          {"signal_power", r.signal_power},
                          {"thermal_power", r.thermal_power},
                          {"chains", chains}});
        if (w.enabled()) {
            write_point_files(w, s, r);
        }
        for (auto& c : r.chains) {
            const double rate = c.measurement.reference.sample_rate();
            c.measurement.reference = Signal({}, rate);
            c.measurement.linear_output = Signal({}, rate);
            c.measurement.nonlinear_output = Signal({}, rate);
        }
        out.points.push_back(std::move(r));
    }
    w.text("results.csv", csv);
    if (s.outputs.svg) {
        write_sweep_plots(w, s, out.points);
    }
    nlohmann::json summary = {{"scenario", to_json(s)},
                              {"lambda_c_hz", s.setup.lambda_c()},
                              {"capacity_is_proxy", true},
                              {"points", points}};
    w.text("summary.json", summary.dump(2) + "\n");
}

// ---- toy examples -------------------------------------------------------

void run_toys(const Scenario& s, OutputWriter& w, RunResult& out)
{
    out.toy_cases = s.experiment == ExperimentKind::toy1 ? run_toy1(s.toy1) : run_toy2(s.toy2);
    std::string csv = "phase,linear_rms_error,nonlinear_rms_error,ratio,skip_samples\n";
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : out.toy_cases) {
        csv += c.phase + "," + format_number(c.linear_rms_error) + ","
               + format_number(c.nonlinear_rms_error) + "," + format_number(c.ratio()) + ","
               + std::to_string(c.skip) + "\n";
        cases.push_back({{"phase", c.phase},
                         {"linear_rms_error", c.linear_rms_error},
                         {"nonlinear_rms_error", c.nonlinear_rms_error},
                         {"ratio", c.ratio()}});
        if (s.outputs.traces) {
            std::string t = "t,clean,noisy,linear_reference,linear_output,nonlinear_reference,"
                            "nonlinear_output\n";
            for (std::size_t i = 0; i < c.clean.size(); ++i) {
                t += format_number(static_cast<double>(i) * c.clean.dt()) + ","
                     + format_number(c.clean[i]) + "," + format_number(c.noisy[i]) + ","
                     + format_number(c.linear_reference[i]) + "," + format_number(c.linear_output[i])
                     + "," + format_number(c.nonlinear_reference[i]) + ","
                     + format_number(c.nonlinear_output[i]) + "\n";
            }
            w.text(fs::path("traces") / (c.phase + ".csv"), t);
        }
        if (s.outputs.svg) {
            // The last three periods after the skip.
            const double period = s.experiment == ExperimentKind::toy1 ? s.toy1.period : s.toy2.period;
            const auto span = static_cast<std::size_t>(std::llround(3.0 * period * c.clean.sample_rate()));
            const std::size_t first = c.clean.size() > span ? c.clean.size() - span : 0;
            auto series = [&](const std::string& label, const Signal& x) {
                PlotSeries ps{label, {}, {}};
                for (std::size_t i = first; i < x.size(); ++i) {
                    ps.x.push_back(static_cast<double>(i) * x.dt());
                    ps.y.push_back(x[i]);
                }
                return ps;
            };
            LinePlot plot{s.name + ", " + c.phase, "t (s)", "amplitude", false,
                          {series("clean", c.clean), series("linear reference", c.linear_reference),
                           series("linear output", c.linear_output),
                           series("nonlinear output", c.nonlinear_output)}};
            w.svg(c.phase + ".svg", plot);
        }
    }
    w.text("results.csv", csv);
    w.text("summary.json",
           nlohmann::json({{"scenario", to_json(s)}, {"cases", cases}}).dump(2) + "\n");
}

// ---- delta-sigma --------------------------------------------------------

void run_deltasigma(const Scenario& s, OutputWriter& w, RunResult& out, SignalFormat format)
{
    DeltaSigmaExperimentConfig c = s.deltasigma;
    c.seed = s.seed;
    const auto r = run_deltasigma_experiment(c);
    std::string csv = "metric,value\n";
    auto row = [&](const char* k, double v) { csv += std::string(k) + "," + format_number(v) + "\n"; };
    row("binary", r.binary ? 1.0 : 0.0);
    row("dc_mean", r.dc_mean);
    row("dc_error", r.dc_error);
    row("superposition_residual", r.superposition_residual);
    row("quantization_floor", r.quantization_floor);
    row("impulse_energy_bypassed", r.impulse_energy_bypassed);
    row("impulse_energy_caf", r.impulse_energy_caf);
    row("impulse_reduction_db", r.impulse_reduction_db);
    row("output_samples", static_cast<double>(r.output_samples));
    row("skip_samples", static_cast<double>(r.skip));
    w.text("results.csv", csv);
    const std::string ext = file_extension(format);
    if (s.outputs.traces) {
        w.signal("clean_output" + ext, r.clean_output, format);
        w.signal("bypassed_output" + ext, r.bypassed_output, format);
        w.signal("caf_output" + ext, r.caf_output, format);
        w.bytes("bitstream.bits", pack_bits(r.bitstream));
    }
    if (s.outputs.svg) {
        auto series = [&](const std::string& label, const Signal& x) {
            PlotSeries ps{label, {}, {}};
            for (std::size_t i = r.skip; i < x.size(); ++i) {
                ps.x.push_back(static_cast<double>(i) * x.dt());
                ps.y.push_back(x[i]);
            }
            return ps;
        };
        w.svg("outputs.svg", LinePlot{s.name + ": decimated outputs", "t (s)", "amplitude", false,
                                      {series("clean", r.clean_output),
                                       series("impulses, CAF bypassed", r.bypassed_output),
                                       series("impulses, CAF enabled", r.caf_output)}});
    }
    nlohmann::json summary = {{"scenario", to_json(s)},
                              {"binary", r.binary},
                              {"dc_mean", r.dc_mean},
                              {"dc_error", r.dc_error},
                              {"superposition_residual", r.superposition_residual},
                              {"quantization_floor", r.quantization_floor},
                              {"impulse_reduction_db", r.impulse_reduction_db},
                              {"bitstream_samples", r.bitstream.size()}};
    w.text("summary.json", summary.dump(2) + "\n");
    out.deltasigma = r;
}

} // namespace

const char* to_string(SweepAxis axis) noexcept
{
    switch (axis) {
    case SweepAxis::thermal_snr_db: return "thermal_snr_db";
    case SweepAxis::outlier_to_thermal_db: return "outlier_to_thermal_db";
    case SweepAxis::lambda_factor: return "lambda_factor";
    case SweepAxis::duty_cycle: return "duty_cycle";
    case SweepAxis::psd_db: return "psd_db";
    case SweepAxis::beta: return "beta";
    case SweepAxis::tau_scale: return "tau_scale";
    }
    return "thermal_snr_db";
}

SweepAxis parse_sweep_axis(const std::string& name)
{
    for (SweepAxis a : all_axes) {
        if (name == to_string(a)) {
            return a;
        }
    }
    throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

const std::vector<double>& axis_values(const SweepAxes& axes, SweepAxis axis)
{
    return axis_values(const_cast<SweepAxes&>(axes), axis);
}

std::vector<double>& axis_values(SweepAxes& axes, SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::thermal_snr_db: return axes.thermal_snr_db;
    case SweepAxis::outlier_to_thermal_db: return axes.outlier_to_thermal_db;
    case SweepAxis::lambda_factor: return axes.lambda_factor;
    case SweepAxis::duty_cycle: return axes.duty_cycle;
    case SweepAxis::psd_db: return axes.psd_db;
    case SweepAxis::beta: return axes.beta;
    case SweepAxis::tau_scale: return axes.tau_scale;
    }
    return axes.thermal_snr_db;
}

std::vector<GridPoint> expand_grid(const Scenario& s)
{
    GridPoint base;
    base.noise = s.noise;
    base.setup = s.setup;
    std::vector<GridPoint> grid{base};
    for (SweepAxis a : all_axes) {
        const auto& values = axis_values(s.sweep, a);
        if (values.empty()) {
            continue;
        }
        std::vector<GridPoint> next;
        next.reserve(grid.size() * values.size());
        for (const auto& p : grid) {
            for (double v : values) {
                GridPoint q = p;
                apply_axis(q, a, v);
                next.push_back(std::move(q));
            }
        }
        grid = std::move(next);
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i].index = i;
        fill_values(grid[i]);
    }
    return grid;
}

PointSignals synthesize_point(const Scenario& s, const GridPoint& p)
{
    const WidebandSetup& w = p.setup;
    const RngSeed base{s.seed};
    PointSignals out;
    out.clean = generate_rrc_signal(w.b0, s.duration, w.rate, derive_seed(base, 0, p.index),
                                    w.rrc_rolloff, w.rrc_span);
    out.signal_power = baseband_power(w, out.clean);

    std::vector<double> total(out.clean.size(), 0.0);
    auto add = [&](const Signal& x) {
        for (std::size_t i = 0; i < total.size(); ++i) {
            total[i] += x[i];
        }
    };
    // Thermal first: outlier powers are set relative to it.
    for (std::size_t j = 0; j < p.noise.size(); ++j) {
        const auto& n = p.noise[j];
        if (n.kind == NoiseComponentKind::thermal) {
            const Signal raw = raw_component(w, n, s.duration, derive_seed(base, 1 + j, p.index));
            const Signal th = calibrate(w, raw, out.signal_power / db_to_ratio(n.snr_db), "thermal noise");
            out.thermal_power = baseband_power(w, th);
            add(th);
        }
    }
    for (std::size_t j = 0; j < p.noise.size(); ++j) {
        const auto& n = p.noise[j];
        if (n.kind == NoiseComponentKind::thermal) {
            continue;
        }
        const Signal raw = raw_component(w, n, s.duration, derive_seed(base, 1 + j, p.index));
        if (n.kind == NoiseComponentKind::adjacent_channel) {
            add(scaled(raw, std::sqrt(db_to_ratio(n.psd_db) * n.bandwidth_factor)));
        } else {
            add(calibrate(w, raw, out.thermal_power * db_to_ratio(n.outlier_to_thermal_db),
                          std::string(to_string(n.kind)) + " noise"));
        }
    }
    out.noise = Signal(std::move(total), w.rate);
    return out;
}

PointResult run_point(const Scenario& s, const GridPoint& p)
{
    const PointSignals sig = synthesize_point(s, p);
    PointResult r;
    r.point = p;
    r.signal_power = sig.signal_power;
    r.thermal_power = sig.thermal_power;
    for (ChainKind k : s.chains) {
        r.chains.push_back({k, measure_chain(p.setup, k, sig.clean, sig.noise, true)});
    }
    return r;
}

std::string sweep_results_header()
{
    std::string h = "point";
    for (SweepAxis a : all_axes) {
        h += std::string(",") + to_string(a);
        if (a == SweepAxis::lambda_factor) {
            h += ",lambda_hz";
        }
    }
    return h + ",chain,role,report_chain,baseband_snr_db,snr_capped,capacity_proxy_bits_per_s_per_hz,"
               "clip_fraction,peakedness_dbg,gain_db";
}

RunResult run_scenario(const Scenario& s, const RunOptions& options)
{
    validate_scenario(s);
    RunResult out;
    out.directory = options.out_dir / s.name;
    OutputWriter w(out.directory, options.write_files);
    w.text("scenario.json", to_json(s).dump(2) + "\n");
    switch (s.experiment) {
    case ExperimentKind::snr_sweep: run_sweep(s, w, out); break;
    case ExperimentKind::toy1:
    case ExperimentKind::toy2: run_toys(s, w, out); break;
    case ExperimentKind::deltasigma: run_deltasigma(s, w, out, options.format); break;
    }
    out.files = w.files;
    return out;
}

std::string describe_scenario(const Scenario& s)
{
    std::ostringstream o;
    o << s.name << " (" << to_string(s.experiment) << ")\n";
    if (!s.description.empty()) {
        o << "  " << s.description << "\n";
    }
    o << "  seed " << s.seed << "\n";
    if (s.experiment != ExperimentKind::snr_sweep) {
        return o.str();
    }
    o << "  duration " << s.duration << " s at " << s.setup.rate << " Hz, b0 " << s.setup.b0
      << " Hz, lambda_c " << s.setup.lambda_c() << " Hz\n";
    o << "  chains:";
    for (auto k : s.chains) {
        o << " " << to_string(k);
    }
    o << "\n  noise:\n";
    for (const auto& n : s.noise) {
        o << "    " << to_string(n.kind);
        switch (n.kind) {
        case NoiseComponentKind::thermal: o << " snr " << n.snr_db << " dB"; break;
        case NoiseComponentKind::bursts: o << " duty " << n.duty_cycle; [[fallthrough]];
        case NoiseComponentKind::poisson:
        case NoiseComponentKind::narrowband_poisson:
            o << " rate " << n.lambda_factor << " lambda_c, outlier-to-thermal "
              << n.outlier_to_thermal_db << " dB";
            break;
        case NoiseComponentKind::adjacent_channel:
            o << " psd +" << n.psd_db << " dB at " << n.center_factor << " b0, width "
              << n.bandwidth_factor << " b0";
            break;
        }
        o << "\n";
    }
    o << "  grid points: " << s.sweep.size() << "\n";
    for (SweepAxis a : all_axes) {
        const auto& v = axis_values(s.sweep, a);
        if (!v.empty()) {
            o << "    " << to_string(a) << ":";
            for (double x : v) {
                o << " " << x;
            }
            o << "\n";
        }
    }
    return o.str();
}

} // namespace onm
