#include "onm/scenario.hpp"

#include "onm/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>
#include <type_traits>

namespace onm {

using nlohmann::json;

namespace {

std::string type_name(const json& j)
{
    return j.type_name();
}

/// Object reader that records the keys it consumed so leftovers can be
/// reported as unknown.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) {
            throw ConfigError(path_.empty() ? "/" : path_,
                              "expected an object, got " + type_name(j_));
        }
    }

    std::string at(const std::string& key) const { return path_ + "/" + key; }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json* find(const std::string& key)
    {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    const json& require(const std::string& key)
    {
        const json* v = find(key);
        if (!v) {
            throw ConfigError(at(key), "required field is missing");
        }
        return *v;
    }

    void number(const std::string& key, double& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_number()) {
                throw ConfigError(at(key), "expected a number, got " + type_name(*v));
            }
            out = v->get<double>();
            if (!std::isfinite(out)) {
                throw ConfigError(at(key), "must be finite");
            }
        }
    }

    template <class Int>
    void integer(const std::string& key, Int& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_number_integer()) {
                throw ConfigError(at(key), "expected an integer, got " + type_name(*v));
            }
            if constexpr (std::is_unsigned_v<Int>) {
                if (v->is_number_unsigned() || v->get<long long>() >= 0) {
                    out = v->get<Int>();
                } else {
                    throw ConfigError(at(key), "must be non-negative");
                }
            } else {
                out = v->get<Int>();
            }
        }
    }

    void boolean(const std::string& key, bool& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_boolean()) {
                throw ConfigError(at(key), "expected a boolean, got " + type_name(*v));
            }
            out = v->get<bool>();
        }
    }

    void string(const std::string& key, std::string& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_string()) {
                throw ConfigError(at(key), "expected a string, got " + type_name(*v));
            }
            out = v->get<std::string>();
        }
    }

    void numbers(const std::string& key, std::vector<double>& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_array()) {
                throw ConfigError(at(key), "expected an array of numbers");
            }
            out.clear();
            for (std::size_t i = 0; i < v->size(); ++i) {
                const json& e = (*v)[i];
                if (!e.is_number() || !std::isfinite(e.get<double>())) {
                    throw ConfigError(at(key) + "/" + std::to_string(i), "expected a finite number");
                }
                out.push_back(e.get<double>());
            }
            if (out.empty()) {
                throw ConfigError(at(key), "sweep axis must not be empty");
            }
        }
    }

    void finish() const
    {
        for (const auto& [key, value] : j_.items()) {
            if (!seen_.count(key)) {
                throw ConfigError(at(key), "unknown field");
            }
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <class E, std::size_t N>
E parse_enum(const json& v, const std::string& path, const std::array<E, N>& values)
{
    if (!v.is_string()) {
        throw ConfigError(path, "expected a string, got " + type_name(v));
    }
    const auto s = v.get<std::string>();
    std::string options;
    for (E e : values) {
        if (s == to_string(e)) {
            return e;
        }
        options += (options.empty() ? "" : ", ") + std::string(to_string(e));
    }
    throw ConfigError(path, "unknown value '" + s + "' (expected one of: " + options + ")");
}

constexpr std::array experiment_kinds{ExperimentKind::snr_sweep, ExperimentKind::toy1,
                                      ExperimentKind::toy2, ExperimentKind::deltasigma};
constexpr std::array noise_kinds{NoiseComponentKind::thermal, NoiseComponentKind::poisson,
                                 NoiseComponentKind::bursts, NoiseComponentKind::adjacent_channel,
                                 NoiseComponentKind::narrowband_poisson};
constexpr std::array chain_kinds{ChainKind::linear,       ChainKind::caf,
                                 ChainKind::derivative_caf, ChainKind::bandstop_caf,
                                 ChainKind::shared_band_adic, ChainKind::deltasigma};
constexpr std::array iir_families{IirFamily::bessel, IirFamily::butterworth};

void read_setup(ObjectReader r, WidebandSetup& s)
{
    r.number("b0", s.b0);
    r.number("rate", s.rate);
    r.number("rrc_rolloff", s.rrc_rolloff);
    r.integer("rrc_span", s.rrc_span);
    r.integer("frontend_order", s.frontend_order);
    r.number("frontend_factor", s.frontend_factor);
    r.number("band_pass_factor", s.band_pass_factor);
    r.number("band_stop_factor", s.band_stop_factor);
    r.number("band_attenuation", s.band_attenuation);
    r.number("tau_scale", s.tau_scale);
    r.number("beta", s.fences.beta);
    r.integer("calibration_length", s.fences.calibration_length);
    r.number("floor_fraction", s.floor_fraction);
    r.number("bandstop_lo_factor", s.bandstop_lo_factor);
    r.number("bandstop_hi_factor", s.bandstop_hi_factor);
    r.integer("bandstop_order", s.bandstop_order);
    r.number("shared_tau_scale", s.shared_tau_scale);
    r.number("shared_beta", s.shared_fences.beta);
    r.finish();
}

json setup_json(const WidebandSetup& s)
{
    return {{"b0", s.b0},
            {"rate", s.rate},
            {"rrc_rolloff", s.rrc_rolloff},
            {"rrc_span", s.rrc_span},
            {"frontend_order", s.frontend_order},
            {"frontend_factor", s.frontend_factor},
            {"band_pass_factor", s.band_pass_factor},
            {"band_stop_factor", s.band_stop_factor},
            {"band_attenuation", s.band_attenuation},
            {"tau_scale", s.tau_scale},
            {"beta", s.fences.beta},
            {"calibration_length", s.fences.calibration_length},
            {"floor_fraction", s.floor_fraction},
            {"bandstop_lo_factor", s.bandstop_lo_factor},
            {"bandstop_hi_factor", s.bandstop_hi_factor},
            {"bandstop_order", s.bandstop_order},
            {"shared_tau_scale", s.shared_tau_scale},
            {"shared_beta", s.shared_fences.beta}};
}

NoiseComponent read_noise(ObjectReader r)
{
    NoiseComponent n;
    n.kind = parse_enum(r.require("kind"), r.at("kind"), noise_kinds);
    r.number("snr_db", n.snr_db);
    r.number("outlier_to_thermal_db", n.outlier_to_thermal_db);
    r.number("lambda_factor", n.lambda_factor);
    r.number("duty_cycle", n.duty_cycle);
    r.number("psd_db", n.psd_db);
    r.number("center_factor", n.center_factor);
    r.number("bandwidth_factor", n.bandwidth_factor);
    r.finish();
    return n;
}

json noise_json(const NoiseComponent& n)
{
    json j = {{"kind", to_string(n.kind)}};
    switch (n.kind) {
    case NoiseComponentKind::thermal: j["snr_db"] = n.snr_db; break;
    case NoiseComponentKind::poisson:
    case NoiseComponentKind::narrowband_poisson:
        j["outlier_to_thermal_db"] = n.outlier_to_thermal_db;
        j["lambda_factor"] = n.lambda_factor;
        break;
    case NoiseComponentKind::bursts:
        j["outlier_to_thermal_db"] = n.outlier_to_thermal_db;
        j["lambda_factor"] = n.lambda_factor;
        j["duty_cycle"] = n.duty_cycle;
        break;
    case NoiseComponentKind::adjacent_channel:
        j["psd_db"] = n.psd_db;
        j["center_factor"] = n.center_factor;
        j["bandwidth_factor"] = n.bandwidth_factor;
        break;
    }
    return j;
}

void read_sweep(ObjectReader r, SweepAxes& s)
{
    r.numbers("thermal_snr_db", s.thermal_snr_db);
    r.numbers("outlier_to_thermal_db", s.outlier_to_thermal_db);
    r.numbers("lambda_factor", s.lambda_factor);
    r.numbers("duty_cycle", s.duty_cycle);
    r.numbers("psd_db", s.psd_db);
    r.numbers("beta", s.beta);
    r.numbers("tau_scale", s.tau_scale);
    r.finish();
}

json sweep_json(const SweepAxes& s)
{
    json j = json::object();
    auto put = [&](const char* k, const std::vector<double>& v) {
        if (!v.empty()) {
            j[k] = v;
        }
    };
    put("thermal_snr_db", s.thermal_snr_db);
    put("outlier_to_thermal_db", s.outlier_to_thermal_db);
    put("lambda_factor", s.lambda_factor);
    put("duty_cycle", s.duty_cycle);
    put("psd_db", s.psd_db);
    put("beta", s.beta);
    put("tau_scale", s.tau_scale);
    return j;
}

void read_toy1(ObjectReader r, Toy1Config& c)
{
    r.number("period", c.period);
    r.number("rate", c.rate);
    r.number("amplitude", c.amplitude);
    r.integer("periods", c.periods);
    r.integer("skip_periods", c.skip_periods);
    r.number("tau_periods", c.tau_periods);
    r.number("beta", c.fences.beta);
    r.finish();
}

void read_toy2(ObjectReader r, Toy2Config& c)
{
    r.number("period", c.period);
    r.number("rate", c.rate);
    r.number("amplitude", c.amplitude);
    r.integer("periods", c.periods);
    r.integer("skip_periods", c.skip_periods);
    r.number("band_pass_factor", c.band_pass_factor);
    r.number("band_stop_factor", c.band_stop_factor);
    r.number("tau_periods", c.tau_periods);
    r.number("floor_fraction", c.floor_fraction);
    r.number("leak_factor", c.leak_factor);
    r.number("beta", c.fences.beta);
    r.finish();
}

void read_deltasigma(ObjectReader r, DeltaSigmaExperimentConfig& c)
{
    PipelineConfig& p = c.pipeline;
    r.number("modulator_rate", p.modulator_rate);
    r.number("output_rate", p.output_rate);
    r.number("clip_level", p.clip_level);
    r.number("wideband_cutoff", p.wideband_cutoff);
    if (const json* v = r.find("wideband_family")) {
        p.wideband_family = parse_enum(*v, r.at("wideband_family"), iir_families);
    }
    r.number("band_edge", p.band_edge);
    r.number("caf_transition", p.caf_transition);
    r.number("tau", p.tau);
    r.number("beta", p.fences.beta);
    r.number("floor_fraction", p.floor_fraction);
    r.number("dc_level", c.dc_level);
    r.integer("dc_samples", c.dc_samples);
    r.number("duration", c.duration);
    r.number("tone_frequency", c.tone_frequency);
    r.number("tone_amplitude", c.tone_amplitude);
    r.number("thermal_rms", c.thermal_rms);
    r.number("impulse_rate", c.impulse_rate);
    r.number("impulse_amplitude", c.impulse_amplitude);
    r.integer("impulse_width", c.impulse_width);
    r.finish();
}

/// Runs a library validate() and rewraps std::invalid_argument with a location.
template <class F>
void check(const std::string& path, F&& f)
{
    try {
        f();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
}

void check_noise(const NoiseComponent& n, const std::string& path)
{
    if (n.kind == NoiseComponentKind::poisson || n.kind == NoiseComponentKind::bursts
        || n.kind == NoiseComponentKind::narrowband_poisson) {
        if (!(n.lambda_factor > 0.0)) {
            throw ConfigError(path + "/lambda_factor", "event rate must be positive");
        }
    }
    if (n.kind == NoiseComponentKind::bursts && !(n.duty_cycle > 0.0 && n.duty_cycle <= 1.0)) {
        throw ConfigError(path + "/duty_cycle", "duty cycle must lie in (0, 1]");
    }
    if (n.kind == NoiseComponentKind::adjacent_channel
        && !(n.center_factor > 0.0 && n.bandwidth_factor > 0.0)) {
        throw ConfigError(path, "adjacent channel center and bandwidth must be positive");
    }
}

} // namespace

const char* to_string(ExperimentKind kind) noexcept
{
    switch (kind) {
    case ExperimentKind::snr_sweep: return "snr-sweep";
    case ExperimentKind::toy1: return "toy1";
    case ExperimentKind::toy2: return "toy2";
    case ExperimentKind::deltasigma: return "deltasigma";
    }
    return "snr-sweep";
}

const char* to_string(NoiseComponentKind kind) noexcept
{
    switch (kind) {
    case NoiseComponentKind::thermal: return "thermal";
    case NoiseComponentKind::poisson: return "poisson";
    case NoiseComponentKind::bursts: return "bursts";
    case NoiseComponentKind::adjacent_channel: return "adjacent-channel";
    case NoiseComponentKind::narrowband_poisson: return "narrowband-poisson";
    }
    return "thermal";
}

bool NoiseComponent::is_outlier() const noexcept
{
    return kind == NoiseComponentKind::poisson || kind == NoiseComponentKind::bursts
           || kind == NoiseComponentKind::narrowband_poisson;
}

std::size_t SweepAxes::size() const noexcept
{
    std::size_t n = 1;
    for (const auto* axis : {&thermal_snr_db, &outlier_to_thermal_db, &lambda_factor, &duty_cycle,
                             &psd_db, &beta, &tau_scale}) {
        if (!axis->empty()) {
            n *= axis->size();
        }
    }
    return n;
}

void validate_scenario(const Scenario& s)
{
    if (s.schema_version != scenario_schema_version) {
        throw ConfigError("/schema_version", "unsupported schema version "
                                                 + std::to_string(s.schema_version) + " (expected "
                                                 + std::to_string(scenario_schema_version) + ")");
    }
    if (s.name.empty()) {
        throw ConfigError("/name", "must not be empty");
    }
    if (s.name.find_first_of("/\\ ") != std::string::npos) {
        throw ConfigError("/name", "must not contain path separators or spaces");
    }
    switch (s.experiment) {
    case ExperimentKind::toy1: check("/toy1", [&] { s.toy1.validate(); }); return;
    case ExperimentKind::toy2: check("/toy2", [&] { s.toy2.validate(); }); return;
    case ExperimentKind::deltasigma:
        check("/deltasigma", [&] { s.deltasigma.validate(); });
        return;
    case ExperimentKind::snr_sweep: break;
    }

    check("/setup", [&] { s.setup.validate(); });
    if (!(s.duration > 0.0)) {
        throw ConfigError("/duration", "must be positive");
    }
    if (s.chains.empty()) {
        throw ConfigError("/chains", "at least one nonlinear chain is required");
    }
    for (std::size_t i = 0; i < s.chains.size(); ++i) {
        const ChainKind k = s.chains[i];
        const std::string path = "/chains/" + std::to_string(i);
        if (k == ChainKind::linear) {
            throw ConfigError(path, "the linear twin is always measured; list nonlinear chains only");
        }
        if (k == ChainKind::derivative_caf || k == ChainKind::deltasigma) {
            throw ConfigError(path, std::string("chain '") + to_string(k)
                                        + "' is not a baseband SNR chain (use experiment '"
                                        + (k == ChainKind::deltasigma ? "deltasigma" : "toy2")
                                        + "')");
        }
        if (std::find(s.chains.begin(), s.chains.begin() + static_cast<std::ptrdiff_t>(i), k)
            != s.chains.begin() + static_cast<std::ptrdiff_t>(i)) {
            throw ConfigError(path, "duplicate chain");
        }
    }
    for (const double b : s.sweep.beta) {
        if (!(b >= 0.0)) {
            throw ConfigError("/sweep/beta", "fence scale must be non-negative");
        }
    }
    for (const double t : s.sweep.tau_scale) {
        if (!(t > 0.0)) {
            throw ConfigError("/sweep/tau_scale", "tau scale must be positive");
        }
    }

    std::size_t thermal = 0, outliers = 0, adjacent = 0, bursts = 0, poisson = 0;
    for (std::size_t i = 0; i < s.noise.size(); ++i) {
        const auto& n = s.noise[i];
        check_noise(n, "/noise/" + std::to_string(i));
        thermal += n.kind == NoiseComponentKind::thermal;
        outliers += n.is_outlier();
        adjacent += n.kind == NoiseComponentKind::adjacent_channel;
        bursts += n.kind == NoiseComponentKind::bursts;
        poisson += n.kind == NoiseComponentKind::poisson || n.kind == NoiseComponentKind::narrowband_poisson;
    }
    if (thermal != 1) {
        throw ConfigError("/noise", "exactly one thermal component is required");
    }
    for (const double l : s.sweep.lambda_factor) {
        if (!(l > 0.0)) {
            throw ConfigError("/sweep/lambda_factor", "event rate must be positive");
        }
    }
    for (const double d : s.sweep.duty_cycle) {
        if (!(d > 0.0 && d <= 1.0)) {
            throw ConfigError("/sweep/duty_cycle", "duty cycle must lie in (0, 1]");
        }
    }
    if (!s.sweep.outlier_to_thermal_db.empty() && outliers == 0) {
        throw ConfigError("/sweep/outlier_to_thermal_db", "no outlier component to sweep");
    }
    if (!s.sweep.lambda_factor.empty() && outliers == 0) {
        throw ConfigError("/sweep/lambda_factor", "no outlier component to sweep");
    }
    if (!s.sweep.duty_cycle.empty() && bursts == 0) {
        throw ConfigError("/sweep/duty_cycle", "no burst component to sweep");
    }
    if (!s.sweep.psd_db.empty() && adjacent == 0) {
        throw ConfigError("/sweep/psd_db", "no adjacent-channel component to sweep");
    }
    (void)poisson;

    // Burst periods must span at least two samples at every grid value.
    const double lc = s.setup.lambda_c();
    for (std::size_t i = 0; i < s.noise.size(); ++i) {
        const auto& n = s.noise[i];
        if (n.kind != NoiseComponentKind::bursts) {
            continue;
        }
        std::vector<double> factors = s.sweep.lambda_factor;
        if (factors.empty()) {
            factors.push_back(n.lambda_factor);
        }
        for (const double f : factors) {
            if (!(s.setup.rate / (f * lc) >= 2.0)) {
                throw ConfigError("/noise/" + std::to_string(i) + "/lambda_factor",
                                  "burst period shorter than two samples");
            }
        }
    }
    for (std::size_t i = 0; i < s.noise.size(); ++i) {
        const auto& n = s.noise[i];
        if (n.kind == NoiseComponentKind::adjacent_channel
            && !((n.center_factor + n.bandwidth_factor * (1.0 + s.setup.rrc_rolloff)) * s.setup.b0
                 < s.setup.rate / 2.0)) {
            throw ConfigError("/noise/" + std::to_string(i), "adjacent channel exceeds Nyquist");
        }
    }

    const std::size_t warm = std::max({chain_warmup(s.setup, ChainKind::linear),
                                       chain_warmup(s.setup, ChainKind::caf)});
    if (sample_count(s.duration, s.setup.rate) < 2 * warm + s.outputs.psd_segment) {
        throw ConfigError("/duration", "too short for the chain warm-up and PSD segment");
    }
    if (s.outputs.psd_segment < 16) {
        throw ConfigError("/outputs/psd_segment", "must be at least 16");
    }
}

Scenario parse_scenario(const json& doc)
{
    ObjectReader r(doc, "");
    Scenario s;
    {
        const json& v = r.require("schema_version");
        if (!v.is_number_integer()) {
            throw ConfigError("/schema_version", "expected an integer");
        }
        s.schema_version = v.get<int>();
        if (s.schema_version != scenario_schema_version) {
            throw ConfigError("/schema_version", "unsupported schema version "
                                                     + std::to_string(s.schema_version));
        }
    }
    {
        const json& v = r.require("name");
        if (!v.is_string()) {
            throw ConfigError("/name", "expected a string");
        }
        s.name = v.get<std::string>();
    }
    r.string("description", s.description);
    s.experiment = parse_enum(r.require("experiment"), "/experiment", experiment_kinds);
    r.integer("seed", s.seed);
    r.number("duration", s.duration);
    if (const json* v = r.find("setup")) {
        read_setup(ObjectReader(*v, "/setup"), s.setup);
    }
    if (const json* v = r.find("chains")) {
        if (!v->is_array()) {
            throw ConfigError("/chains", "expected an array of chain names");
        }
        s.chains.clear();
        for (std::size_t i = 0; i < v->size(); ++i) {
            s.chains.push_back(parse_enum((*v)[i], "/chains/" + std::to_string(i), chain_kinds));
        }
    }
    if (const json* v = r.find("noise")) {
        if (!v->is_array()) {
            throw ConfigError("/noise", "expected an array of noise components");
        }
        for (std::size_t i = 0; i < v->size(); ++i) {
            s.noise.push_back(read_noise(ObjectReader((*v)[i], "/noise/" + std::to_string(i))));
        }
    }
    if (const json* v = r.find("sweep")) {
        read_sweep(ObjectReader(*v, "/sweep"), s.sweep);
    }
    if (const json* v = r.find("outputs")) {
        ObjectReader o(*v, "/outputs");
        o.boolean("psd", s.outputs.psd);
        o.boolean("svg", s.outputs.svg);
        o.boolean("traces", s.outputs.traces);
        o.integer("psd_segment", s.outputs.psd_segment);
        o.finish();
    }
    if (const json* v = r.find("toy1")) {
        read_toy1(ObjectReader(*v, "/toy1"), s.toy1);
    }
    if (const json* v = r.find("toy2")) {
        read_toy2(ObjectReader(*v, "/toy2"), s.toy2);
    }
    if (const json* v = r.find("deltasigma")) {
        read_deltasigma(ObjectReader(*v, "/deltasigma"), s.deltasigma);
    }
    r.finish();
    s.deltasigma.seed = s.seed;
    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("", "cannot open scenario file '" + path.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("", path.string() + ": invalid JSON: " + e.what());
    }
    return parse_scenario(doc);
}

json to_json(const Scenario& s)
{
    json j = {{"schema_version", s.schema_version},
              {"name", s.name},
              {"description", s.description},
              {"experiment", to_string(s.experiment)},
              {"seed", s.seed}};
    switch (s.experiment) {
    case ExperimentKind::snr_sweep: {
        j["duration"] = s.duration;
        j["setup"] = setup_json(s.setup);
        json chains = json::array();
        for (auto k : s.chains) {
            chains.push_back(to_string(k));
        }
        j["chains"] = chains;
        json noise = json::array();
        for (const auto& n : s.noise) {
            noise.push_back(noise_json(n));
        }
        j["noise"] = noise;
        j["sweep"] = sweep_json(s.sweep);
        break;
    }
    case ExperimentKind::toy1: {
        const auto& c = s.toy1;
        j["toy1"] = {{"period", c.period},           {"rate", c.rate},
                     {"amplitude", c.amplitude},     {"periods", c.periods},
                     {"skip_periods", c.skip_periods}, {"tau_periods", c.tau_periods},
                     {"beta", c.fences.beta}};
        break;
    }
    case ExperimentKind::toy2: {
        const auto& c = s.toy2;
        j["toy2"] = {{"period", c.period},
                     {"rate", c.rate},
                     {"amplitude", c.amplitude},
                     {"periods", c.periods},
                     {"skip_periods", c.skip_periods},
                     {"band_pass_factor", c.band_pass_factor},
                     {"band_stop_factor", c.band_stop_factor},
                     {"tau_periods", c.tau_periods},
                     {"floor_fraction", c.floor_fraction},
                     {"leak_factor", c.leak_factor},
                     {"beta", c.fences.beta}};
        break;
    }
    case ExperimentKind::deltasigma: {
        const auto& c = s.deltasigma;
        const auto& p = c.pipeline;
        j["deltasigma"] = {{"modulator_rate", p.modulator_rate},
                           {"output_rate", p.output_rate},
                           {"clip_level", p.clip_level},
                           {"wideband_cutoff", p.wideband_cutoff},
                           {"wideband_family", to_string(p.wideband_family)},
                           {"band_edge", p.band_edge},
                           {"caf_transition", p.caf_transition},
                           {"tau", p.tau},
                           {"beta", p.fences.beta},
                           {"floor_fraction", p.floor_fraction},
                           {"dc_level", c.dc_level},
                           {"dc_samples", c.dc_samples},
                           {"duration", c.duration},
                           {"tone_frequency", c.tone_frequency},
                           {"tone_amplitude", c.tone_amplitude},
                           {"thermal_rms", c.thermal_rms},
                           {"impulse_rate", c.impulse_rate},
                           {"impulse_amplitude", c.impulse_amplitude},
                           {"impulse_width", c.impulse_width}};
        break;
    }
    }
    j["outputs"] = {{"psd", s.outputs.psd},
                    {"svg", s.outputs.svg},
                    {"traces", s.outputs.traces},
                    {"psd_segment", s.outputs.psd_segment}};
    return j;
}

std::filesystem::path bundled_scenario_dir()
{
    if (const char* env = std::getenv("ONM_SCENARIO_DIR"); env && *env) {
        return env;
    }
    return ONM_SCENARIO_DIR;
}

std::vector<std::string> bundled_scenarios()
{
    std::vector<std::string> names;
    const auto dir = bundled_scenario_dir();
    std::error_code ec;
    for (const auto& e : std::filesystem::directory_iterator(dir, ec)) {
        if (e.is_regular_file() && e.path().extension() == ".json") {
            names.push_back(e.path().stem().string());
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

std::filesystem::path resolve_scenario(const std::string& name_or_path)
{
    const std::filesystem::path p(name_or_path);
    if (std::filesystem::is_regular_file(p)) {
        return p;
    }
    const auto bundled = bundled_scenario_dir() / (name_or_path + ".json");
    if (std::filesystem::is_regular_file(bundled)) {
        return bundled;
    }
    throw ConfigError("", "no scenario file or bundled scenario named '" + name_or_path + "'");
}

} // namespace onm
