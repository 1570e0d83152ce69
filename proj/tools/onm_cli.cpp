// onm: command-line front end for the outlier noise mitigation toolkit.

#include "onm/chains.hpp"
#include "onm/design_json.hpp"
#include "onm/error.hpp"
#include "onm/generators.hpp"
#include "onm/harness.hpp"
#include "onm/scenario.hpp"
#include "onm/signal_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace onm;

struct Common {
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    std::string format = "csv";
};

void add_common(CLI::App* cmd, Common& c, bool with_out_dir)
{
    cmd->add_option("--seed", c.seed, "Override the random seed");
    if (with_out_dir) {
        cmd->add_option("--out-dir", c.out_dir, "Output directory")->capture_default_str();
    }
    cmd->add_option("--format", c.format, "Signal file format")
        ->check(CLI::IsMember({"csv", "bin"}))
        ->capture_default_str();
}

Scenario load(const std::string& name_or_path, const Common& c)
{
    Scenario s = load_scenario(resolve_scenario(name_or_path));
    if (c.seed) {
        s.seed = *c.seed;
        s.deltasigma.seed = *c.seed;
    }
    return s;
}

void report_run(const RunResult& r, std::ostream& out)
{
    for (const auto& p : r.points) {
        for (const auto& c : p.chains) {
            out << "point " << p.point.index << " " << to_string(c.chain) << ": linear "
                << c.measurement.linear_twin.baseband_snr_db << " dB, nonlinear "
                << c.measurement.nonlinear.baseband_snr_db << " dB, gain "
                << c.measurement.gain_db << " dB\n";
        }
    }
    for (const auto& c : r.toy_cases) {
        out << c.phase << ": linear rms error " << c.linear_rms_error << ", nonlinear "
            << c.nonlinear_rms_error << ", ratio " << c.ratio() << "\n";
    }
    if (r.deltasigma) {
        const auto& d = *r.deltasigma;
        out << "binary " << (d.binary ? "yes" : "no") << ", dc error " << d.dc_error
            << ", superposition residual " << d.superposition_residual << " (floor "
            << d.quantization_floor << "), impulse reduction " << d.impulse_reduction_db << " dB\n";
    }
    out << "wrote " << r.files.size() << " files under " << r.directory.string() << "\n";
}

/// "name=v1,v2,..." -> axis and values.
std::pair<SweepAxis, std::vector<double>> parse_axis_override(const std::string& text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw std::invalid_argument("axis override '" + text + "' must look like name=v1,v2");
    }
    const SweepAxis axis = parse_sweep_axis(text.substr(0, eq));
    std::vector<double> values;
    std::stringstream ss(text.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || item.empty()) {
            throw std::invalid_argument("axis override '" + text + "': '" + item + "' is not a number");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw std::invalid_argument("axis override '" + text + "' has no values");
    }
    return {axis, values};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Intermittently nonlinear outlier noise mitigation toolkit"};
    app.require_subcommand(1);

    // generate
    Common gen_c;
    std::string gen_kind = "thermal";
    std::string gen_out;
    double gen_duration = 1.0, gen_rate = 64000.0, gen_power = 1.0, gen_lambda = 100.0;
    double gen_period = 0.01, gen_duty = 0.1, gen_amplitude = 1.0, gen_b0 = 1000.0, gen_delay = 0.0;
    auto* gen = app.add_subcommand("generate", "Write a synthetic signal");
    gen->add_option("--kind", gen_kind, "Signal kind")
        ->check(CLI::IsMember({"thermal", "poisson", "bursts", "rrc", "tone", "square", "triangle",
                               "impulse-train"}))
        ->capture_default_str();
    gen->add_option("-o,--output", gen_out, "Output file")->required();
    gen->add_option("--duration", gen_duration, "Seconds")->capture_default_str();
    gen->add_option("--rate", gen_rate, "Sample rate (Hz)")->capture_default_str();
    gen->add_option("--power", gen_power, "Mean square (thermal, in-burst) or area variance (poisson)")
        ->capture_default_str();
    gen->add_option("--lambda", gen_lambda, "Poisson arrival rate (1/s)")->capture_default_str();
    gen->add_option("--period", gen_period, "Burst or waveform period (s)")->capture_default_str();
    gen->add_option("--duty", gen_duty, "Burst duty cycle")->capture_default_str();
    gen->add_option("--amplitude", gen_amplitude, "Waveform amplitude or impulse area")
        ->capture_default_str();
    gen->add_option("--b0", gen_b0, "RRC half-power bandwidth (Hz)")->capture_default_str();
    gen->add_option("--delay", gen_delay, "Waveform delay (s)")->capture_default_str();
    add_common(gen, gen_c, false);

    // filter
    Common fil_c;
    std::string fil_in, fil_out, fil_chain = "linear", fil_design, fil_scenario;
    bool fil_bypass = false;
    auto* fil = app.add_subcommand("filter", "Filter a signal file through a chain or a saved design");
    fil->add_option("input", fil_in, "Input signal (csv or bin)")->required()->check(CLI::ExistingFile);
    fil->add_option("-o,--output", fil_out, "Output file")->required();
    fil->add_option("--chain", fil_chain, "Baseband chain")
        ->check(CLI::IsMember({"linear", "caf", "bandstop-caf", "shared-band-adic"}))
        ->capture_default_str();
    fil->add_option("--design", fil_design, "IIR or FIR design JSON; overrides --chain")
        ->check(CLI::ExistingFile);
    fil->add_option("--scenario", fil_scenario, "Take the chain setup from a scenario");
    fil->add_flag("--bypass", fil_bypass, "Bypass the nonlinear stage");
    add_common(fil, fil_c, false);

    // design
    std::string des_family = "bessel", des_kind = "lowpass", des_out;
    int des_order = 2;
    std::vector<double> des_cutoffs{10000.0};
    double des_rate = 64000.0;
    auto* des = app.add_subcommand("design", "Write an IIR design as JSON");
    des->add_option("--family", des_family)->check(CLI::IsMember({"bessel", "butterworth"}))->capture_default_str();
    des->add_option("--kind", des_kind)
        ->check(CLI::IsMember({"lowpass", "highpass", "bandpass", "bandstop"}))
        ->capture_default_str();
    des->add_option("--order", des_order)->capture_default_str();
    des->add_option("--cutoff", des_cutoffs, "One cutoff, or two for band filters (Hz)");
    des->add_option("--rate", des_rate)->capture_default_str();
    des->add_option("-o,--output", des_out, "Output file (stdout when omitted)");

    // run
    Common run_c;
    std::string run_name;
    auto* run = app.add_subcommand("run", "Run a scenario file or bundled scenario");
    run->add_option("scenario", run_name, "Scenario file or bundled name")->required();
    add_common(run, run_c, true);

    // sweep
    Common sw_c;
    std::string sw_name;
    std::vector<std::string> sw_axes;
    auto* sw = app.add_subcommand("sweep", "Run a scenario with sweep axes replaced");
    sw->add_option("scenario", sw_name, "Scenario file or bundled name")->required();
    sw->add_option("--axis", sw_axes, "Axis override name=v1,v2,... (repeatable)");
    add_common(sw, sw_c, true);

    // validate
    std::vector<std::string> val_names;
    auto* val = app.add_subcommand("validate", "Check scenarios without running them");
    val->add_option("scenarios", val_names, "Scenario files or bundled names (all bundled when omitted)");

    // list
    app.add_subcommand("list", "List the bundled scenarios");

    // describe
    std::string desc_name;
    bool desc_json = false;
    auto* desc = app.add_subcommand("describe", "Print a scenario with its defaults filled in");
    desc->add_option("scenario", desc_name, "Scenario file or bundled name")->required();
    desc->add_flag("--json", desc_json, "Print the full JSON document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (gen->parsed()) {
            const RngSeed seed{gen_c.seed.value_or(1)};
            Signal x{{}, 1.0};
            if (gen_kind == "thermal") {
                x = generate_thermal(gen_duration, gen_power, gen_rate, seed);
            } else if (gen_kind == "poisson") {
                x = generate_poisson_impulses(gen_duration, gen_lambda, std::sqrt(gen_power), gen_rate, seed);
            } else if (gen_kind == "bursts") {
                x = generate_bursts(gen_duration, gen_period, gen_duty, gen_power, gen_rate, seed);
            } else if (gen_kind == "rrc") {
                x = generate_rrc_signal(gen_b0, gen_duration, gen_rate, seed);
            } else if (gen_kind == "tone") {
                x = generate_tone(gen_period, gen_amplitude, gen_rate, gen_duration, gen_delay);
            } else if (gen_kind == "square") {
                x = generate_square(gen_period, gen_amplitude, gen_rate, gen_duration, gen_delay);
            } else if (gen_kind == "triangle") {
                x = generate_triangle(gen_period, gen_amplitude, gen_rate, gen_duration, gen_delay);
            } else {
                x = generate_impulse_train(gen_period, gen_amplitude, gen_rate, gen_duration, gen_delay);
            }
            write_signal(gen_out, x, parse_signal_format(gen_c.format));
            std::cout << "wrote " << x.size() << " samples to " << gen_out << "\n";
        } else if (fil->parsed()) {
            const Signal x = read_signal(fil_in);
            Signal y{{}, 1.0};
            if (!fil_design.empty()) {
                std::ifstream in(fil_design);
                const auto doc = nlohmann::json::parse(in);
                if (doc.value("type", "") == "fir") {
                    FirFilter f(fir_from_json(doc));
                    y = f.apply(x);
                } else {
                    IirFilter f(iir_from_json(doc));
                    y = f.apply(x);
                }
            } else {
                WidebandSetup setup;
                if (!fil_scenario.empty()) {
                    setup = load_scenario(resolve_scenario(fil_scenario)).setup;
                }
                if (std::abs(setup.rate - x.sample_rate()) > 1e-6 * setup.rate) {
                    throw std::invalid_argument("input sample rate " + std::to_string(x.sample_rate())
                                                + " Hz does not match the chain rate "
                                                + std::to_string(setup.rate) + " Hz");
                }
                const auto r = run_chain(setup, parse_chain_kind(fil_chain), fil_bypass, x);
                y = r.output;
                std::cout << "clip fraction " << r.clip_fraction << "\n";
            }
            write_signal(fil_out, y, parse_signal_format(fil_c.format));
            std::cout << "wrote " << y.size() << " samples to " << fil_out << "\n";
        } else if (des->parsed()) {
            const auto d = design_iir(parse_iir_family(des_family), parse_filter_kind(des_kind),
                                      des_order, des_cutoffs, des_rate);
            const std::string text = to_json(d).dump(2) + "\n";
            if (des_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream(des_out) << text;
            }
        } else if (run->parsed() || sw->parsed()) {
            const Common& c = run->parsed() ? run_c : sw_c;
            Scenario s = load(run->parsed() ? run_name : sw_name, c);
            if (sw->parsed()) {
                if (s.experiment != ExperimentKind::snr_sweep) {
                    throw ConfigError("/experiment", "sweep needs an snr-sweep scenario");
                }
                for (const auto& a : sw_axes) {
                    auto [axis, values] = parse_axis_override(a);
                    axis_values(s.sweep, axis) = values;
                }
                validate_scenario(s);
            }
            RunOptions opt;
            opt.out_dir = c.out_dir;
            opt.format = parse_signal_format(c.format);
            report_run(run_scenario(s, opt), std::cout);
        } else if (val->parsed()) {
            std::vector<std::string> names = val_names;
            if (names.empty()) {
                names = bundled_scenarios();
            }
            int failures = 0;
            for (const auto& n : names) {
                try {
                    const Scenario s = load_scenario(resolve_scenario(n));
                    std::cout << n << ": ok (" << to_string(s.experiment) << ")\n";
                } catch (const std::exception& e) {
                    std::cerr << n << ": " << e.what() << "\n";
                    ++failures;
                }
            }
            return failures == 0 ? 0 : 1;
        } else if (app.got_subcommand("list")) {
            for (const auto& n : bundled_scenarios()) {
                const Scenario s = load_scenario(resolve_scenario(n));
                std::cout << n << "  [" << to_string(s.experiment) << "]  " << s.description << "\n";
            }
        } else if (desc->parsed()) {
            const Scenario s = load_scenario(resolve_scenario(desc_name));
            if (desc_json) {
                std::cout << to_json(s).dump(2) << "\n";
            } else {
                std::cout << describe_scenario(s);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "onm: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
