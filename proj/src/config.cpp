#include "emslb/config.hpp"

#include "emslb/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace emslb {

using nlohmann::json;

std::vector<double> SweepRange::values() const
{
    std::vector<double> out;
    if (count <= 0) {
        return out;
    }
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
    }
    if (count > 1) {
        out.back() = stop;
    }
    return out;
}

namespace {

// Axis swept by each experiment type.
const std::map<std::string, std::string>& experiment_axes()
{
    static const std::map<std::string, std::string> axes{
        {"rcs-vs-freq", "frequency_hz"},
        {"avg-rcs-vs-size", "panel_n"},
        {"align-sim", "three_sigma_m"},
        {"spems-coverage", "phi_deg"},
        {"peb-vs-size", "panel_n"},
        {"peb-vs-bandwidth", "bandwidth_hz"},
    };
    return axes;
}

json vec_json(const std::array<double, 3>& v)
{
    return json::array({v[0], v[1], v[2]});
}

json to_json(const ScenarioConfig& c)
{
    json points_tx = json::array();
    for (const auto& p : c.tx_m) {
        points_tx.push_back(vec_json(p));
    }
    json points_rx = json::array();
    for (const auto& p : c.rx_m) {
        points_rx.push_back(vec_json(p));
    }
    const auto& e = c.experiment;
    return json{
        {"schema_version", c.schema_version},
        {"terminal", {{"preset", c.terminal_preset},
                      {"rx_per_side", c.rx_per_side},
                      {"rx_spacing_over_lambda", c.rx_spacing_over_lambda},
                      {"tx_m", points_tx},
                      {"rx_m", points_rx}}},
        {"panel", {{"n", c.panel_n}, {"m", c.panel_m}, {"d_over_lambda", c.d_over_lambda}, {"f0_hz", c.f0_hz}}},
        {"pose", {{"x_m", vec_json(c.x_m)}, {"psi_rad", c.psi_rad}}},
        {"prior", {{"sigma_m", c.sigma_m}}},
        {"waveform", {{"bandwidth_hz", c.bandwidth_hz},
                      {"tx_power_dbm", c.tx_power_dbm},
                      {"n0_dbm_hz", c.n0_dbm_hz},
                      {"pulse_duration_s", c.pulse_duration_s}}},
        {"bounds", {{"quadrature_points", c.quadrature_points},
                    {"quadrature_tolerance", c.quadrature_tolerance},
                    {"quadrature_max_points", c.quadrature_max_points},
                    {"hybrid_samples", c.hybrid_samples},
                    {"bare_rcs_deficit_db", c.bare_rcs_deficit_db},
                    {"bare_bias_m", vec_json(c.bare_bias_m)},
                    {"bare_panel_side_m", c.bare_panel_side_m}}},
        {"alignment", {{"kappa", c.kappa},
                       {"scaled_step", c.scaled_step},
                       {"speed_mps", c.speed_mps},
                       {"t_pri_s", c.t_pri_s},
                       {"d_min_m", c.d_min_m},
                       {"phi_min_deg", c.phi_min_deg}}},
        {"spems", {{"module_n", c.spems_module_n},
                   {"beamwidth_deg", json::array({c.spems_beamwidth_deg[0], c.spems_beamwidth_deg[1]})},
                   {"span_deg", c.spems_span_deg},
                   {"azimuth_samples", c.spems_azimuth_samples}}},
        {"experiment", {{"type", e.type},
                        {"sweep_axis", e.sweep_axis},
                        {"range", {{"start", e.range.start}, {"stop", e.range.stop}, {"count", e.range.count}}},
                        {"samples", e.samples},
                        {"seed", e.seed},
                        {"phi_deg", e.phi_deg},
                        {"three_sigma_m", e.three_sigma_m}}},
    };
}

// Reads a JSON object, rejecting keys not consumed by the caller.
class Reader {
public:
    Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path))
    {
        if (!obj_.is_object()) {
            fail(path_, "expected an object");
        }
    }

    ~Reader() = default;

    void finish() const
    {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!seen_.count(it.key())) {
                fail(key_path(it.key()), "unknown key");
            }
        }
    }

    Reader section(const std::string& key)
    {
        seen_.insert(key);
        static const json empty = json::object();
        return obj_.contains(key) ? Reader(obj_.at(key), key_path(key)) : Reader(empty, key_path(key));
    }

    void get(const std::string& key, double& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_number()) {
                fail(key_path(key), "expected a number");
            }
            out = v->get<double>();
        }
    }

    void get(const std::string& key, int& out)
    {
        if (const json* v = find(key)) {
            out = static_cast<int>(integral(*v, key, -1e9, 1e9));
        }
    }

    void get_count(const std::string& key, std::size_t& out)
    {
        if (const json* v = find(key)) {
            out = static_cast<std::size_t>(integral(*v, key, 0.0, 1e15));
        }
    }

    void get_u64(const std::string& key, std::uint64_t& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_number_unsigned()) {
                if (v->is_number_integer() && v->get<long long>() >= 0) {
                    out = static_cast<std::uint64_t>(v->get<long long>());
                    return;
                }
                fail(key_path(key), "expected a nonnegative integer");
            }
            out = v->get<std::uint64_t>();
        }
    }

    void get(const std::string& key, bool& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_boolean()) {
                fail(key_path(key), "expected true or false");
            }
            out = v->get<bool>();
        }
    }

    void get(const std::string& key, std::string& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_string()) {
                fail(key_path(key), "expected a string");
            }
            out = v->get<std::string>();
        }
    }

    template <std::size_t N>
    void get(const std::string& key, std::array<double, N>& out)
    {
        if (const json* v = find(key)) {
            out = fixed_array<N>(*v, key_path(key));
        }
    }

    void get(const std::string& key, std::vector<double>& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_array()) {
                fail(key_path(key), "expected an array of numbers");
            }
            out.clear();
            for (const auto& x : *v) {
                if (!x.is_number()) {
                    fail(key_path(key), "expected an array of numbers");
                }
                out.push_back(x.get<double>());
            }
        }
    }

    void get(const std::string& key, std::vector<std::array<double, 3>>& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_array()) {
                fail(key_path(key), "expected an array of [x, y, z] points");
            }
            out.clear();
            for (const auto& p : *v) {
                out.push_back(fixed_array<3>(p, key_path(key)));
            }
        }
    }

private:
    [[noreturn]] static void fail(const std::string& path, const std::string& what)
    {
        throw ValidationError("config: " + path + ": " + what);
    }

    std::string key_path(const std::string& key) const
    {
        return path_.empty() ? key : path_ + "." + key;
    }

    const json* find(const std::string& key)
    {
        seen_.insert(key);
        return obj_.contains(key) ? &obj_.at(key) : nullptr;
    }

    double integral(const json& v, const std::string& key, double lo, double hi) const
    {
        if (!v.is_number()) {
            fail(key_path(key), "expected an integer");
        }
        const double x = v.get<double>();
        if (x != std::floor(x) || x < lo || x > hi) {
            fail(key_path(key), "expected an integer in range");
        }
        return x;
    }

    template <std::size_t N>
    static std::array<double, N> fixed_array(const json& v, const std::string& path)
    {
        if (!v.is_array() || v.size() != N) {
            fail(path, "expected an array of " + std::to_string(N) + " numbers");
        }
        std::array<double, N> out{};
        for (std::size_t i = 0; i < N; ++i) {
            if (!v[i].is_number()) {
                fail(path, "expected numbers");
            }
            out[i] = v[i].get<double>();
        }
        return out;
    }

    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

ScenarioConfig from_json(const json& j)
{
    ScenarioConfig c;
    Reader root(j, "");
    root.get("schema_version", c.schema_version);
    if (c.schema_version != kSchemaVersion) {
        throw ValidationError("config: unsupported schema_version " + std::to_string(c.schema_version));
    }
    {
        Reader r = root.section("terminal");
        r.get("preset", c.terminal_preset);
        r.get("rx_per_side", c.rx_per_side);
        r.get("rx_spacing_over_lambda", c.rx_spacing_over_lambda);
        r.get("tx_m", c.tx_m);
        r.get("rx_m", c.rx_m);
        r.finish();
    }
    {
        Reader r = root.section("panel");
        r.get("n", c.panel_n);
        r.get("m", c.panel_m);
        r.get("d_over_lambda", c.d_over_lambda);
        r.get("f0_hz", c.f0_hz);
        r.finish();
    }
    {
        Reader r = root.section("pose");
        r.get("x_m", c.x_m);
        r.get("psi_rad", c.psi_rad);
        r.finish();
    }
    {
        Reader r = root.section("prior");
        r.get("sigma_m", c.sigma_m);
        r.finish();
    }
    {
        Reader r = root.section("waveform");
        r.get("bandwidth_hz", c.bandwidth_hz);
        r.get("tx_power_dbm", c.tx_power_dbm);
        r.get("n0_dbm_hz", c.n0_dbm_hz);
        r.get("pulse_duration_s", c.pulse_duration_s);
        r.finish();
    }
    {
        Reader r = root.section("bounds");
        r.get("quadrature_points", c.quadrature_points);
        r.get("quadrature_tolerance", c.quadrature_tolerance);
        r.get("quadrature_max_points", c.quadrature_max_points);
        r.get_count("hybrid_samples", c.hybrid_samples);
        r.get("bare_rcs_deficit_db", c.bare_rcs_deficit_db);
        r.get("bare_bias_m", c.bare_bias_m);
        r.get("bare_panel_side_m", c.bare_panel_side_m);
        r.finish();
    }
    {
        Reader r = root.section("alignment");
        r.get("kappa", c.kappa);
        r.get("scaled_step", c.scaled_step);
        r.get("speed_mps", c.speed_mps);
        r.get("t_pri_s", c.t_pri_s);
        r.get("d_min_m", c.d_min_m);
        r.get("phi_min_deg", c.phi_min_deg);
        r.finish();
    }
    {
        Reader r = root.section("spems");
        r.get("module_n", c.spems_module_n);
        r.get("beamwidth_deg", c.spems_beamwidth_deg);
        r.get("span_deg", c.spems_span_deg);
        r.get("azimuth_samples", c.spems_azimuth_samples);
        r.finish();
    }
    {
        Reader r = root.section("experiment");
        auto& e = c.experiment;
        r.get("type", e.type);
        // The axis follows the type unless given explicitly.
        const auto axis = experiment_axes().find(e.type);
        if (axis != experiment_axes().end()) {
            e.sweep_axis = axis->second;
        }
        r.get("sweep_axis", e.sweep_axis);
        {
            Reader rr = r.section("range");
            rr.get("start", e.range.start);
            rr.get("stop", e.range.stop);
            rr.get("count", e.range.count);
            rr.finish();
        }
        r.get_count("samples", e.samples);
        r.get_u64("seed", e.seed);
        r.get("phi_deg", e.phi_deg);
        r.get("three_sigma_m", e.three_sigma_m);
        r.finish();
    }
    root.finish();
    return c;
}

void apply_override(json& j, const std::string& spec)
{
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ValidationError("override '" + spec + "': expected key=value");
    }
    const std::string key = spec.substr(0, eq);
    const std::string text = spec.substr(eq + 1);
    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }
    json* node = &j;
    std::size_t pos = 0;
    while (true) {
        const auto dot = key.find('.', pos);
        const std::string part = key.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (part.empty()) {
            throw ValidationError("override '" + spec + "': empty key component");
        }
        if (!node->is_object()) {
            throw ValidationError("override '" + spec + "': '" + part + "' is not inside an object");
        }
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        if (node->is_null()) {
            *node = json::object();
        }
        pos = dot + 1;
    }
}

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw ValidationError("config: " + what);
    }
}

bool finite3(const std::array<double, 3>& v)
{
    return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

} // namespace

ScenarioConfig parse_config(const std::string& json_text, const std::vector<std::string>& overrides)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: malformed JSON: ") + e.what());
    }
    for (const auto& o : overrides) {
        apply_override(j, o);
    }
    ScenarioConfig c = from_json(j);
    validate_config(c);
    return c;
}

ScenarioConfig load_config(const std::string& path_or_preset, const std::vector<std::string>& overrides)
{
    const std::string prefix = "preset:";
    if (path_or_preset.rfind(prefix, 0) == 0) {
        const ScenarioConfig base = preset_config(path_or_preset.substr(prefix.size()));
        return parse_config(dump_config(base), overrides);
    }
    std::ifstream in(path_or_preset, std::ios::binary);
    if (!in) {
        throw ValidationError("config: cannot open '" + path_or_preset + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_config(text.str(), overrides);
    } catch (const ValidationError& e) {
        throw ValidationError(path_or_preset + ": " + e.what());
    }
}

std::string dump_config(const ScenarioConfig& cfg)
{
    return to_json(cfg).dump(2) + "\n";
}

std::string config_hash(const ScenarioConfig& cfg)
{
    const std::string text = to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void validate_config(const ScenarioConfig& c)
{
    require(c.schema_version == kSchemaVersion, "unsupported schema_version");
    require(c.terminal_preset == "grid" || c.terminal_preset == "explicit",
            "terminal.preset must be 'grid' or 'explicit'");
    if (c.terminal_preset == "grid") {
        require(c.rx_per_side >= 1, "terminal.rx_per_side must be >= 1");
        require(c.rx_spacing_over_lambda > 0.0, "terminal.rx_spacing_over_lambda must be positive");
    } else {
        require(!c.tx_m.empty() && !c.rx_m.empty(), "explicit terminal needs tx_m and rx_m");
        for (const auto& p : c.tx_m) {
            require(finite3(p), "terminal.tx_m must be finite");
        }
        for (const auto& p : c.rx_m) {
            require(finite3(p), "terminal.rx_m must be finite");
        }
    }
    require(c.panel_n >= 2 && c.panel_m >= 2 && c.panel_n % 2 == 0 && c.panel_m % 2 == 0,
            "panel.n and panel.m must be even and >= 2");
    require(c.d_over_lambda > 0.0 && std::isfinite(c.d_over_lambda), "panel.d_over_lambda must be positive");
    require(c.f0_hz > 0.0 && std::isfinite(c.f0_hz), "panel.f0_hz must be positive");
    require(finite3(c.x_m) && (c.x_m[0] != 0.0 || c.x_m[1] != 0.0 || c.x_m[2] != 0.0),
            "pose.x_m must be finite and nonzero");
    require(std::isfinite(c.psi_rad), "pose.psi_rad must be finite");
    require(c.sigma_m >= 0.0 && std::isfinite(c.sigma_m), "prior.sigma_m must be nonnegative");
    require(c.bandwidth_hz > 0.0 && std::isfinite(c.bandwidth_hz), "waveform.bandwidth_hz must be positive");
    require(c.f0_hz > 0.5 * c.bandwidth_hz, "panel.f0_hz must exceed half the bandwidth");
    require(std::isfinite(c.tx_power_dbm) && std::isfinite(c.n0_dbm_hz), "waveform power and noise must be finite");
    require(c.pulse_duration_s > 0.0 && std::isfinite(c.pulse_duration_s), "waveform.pulse_duration_s must be positive");
    require(c.quadrature_points >= 3 && c.quadrature_points % 2 == 1, "bounds.quadrature_points must be odd and >= 3");
    require(c.quadrature_max_points >= c.quadrature_points, "bounds.quadrature_max_points below quadrature_points");
    require(c.quadrature_tolerance > 0.0, "bounds.quadrature_tolerance must be positive");
    require(c.hybrid_samples >= 1, "bounds.hybrid_samples must be >= 1");
    require(std::isfinite(c.bare_rcs_deficit_db), "bounds.bare_rcs_deficit_db must be finite");
    require(finite3(c.bare_bias_m), "bounds.bare_bias_m must be finite");
    require(c.bare_panel_side_m > 0.0, "bounds.bare_panel_side_m must be positive");
    require(c.kappa >= 1.0, "alignment.kappa must be >= 1");
    require(c.speed_mps > 0.0 && c.t_pri_s > 0.0 && c.d_min_m > 0.0, "alignment speed, PRI and D_min must be positive");
    require(c.phi_min_deg >= 0.0 && c.phi_min_deg < 90.0, "alignment.phi_min_deg must be in [0, 90)");
    require(c.spems_module_n >= 2 && c.spems_module_n % 2 == 0, "spems.module_n must be even and >= 2");
    require(c.spems_beamwidth_deg[0] > 0.0 && c.spems_beamwidth_deg[1] > 0.0, "spems.beamwidth_deg must be positive");
    require(c.spems_span_deg > 0.0 && c.spems_span_deg <= 180.0, "spems.span_deg must be in (0, 180]");
    require(c.spems_azimuth_samples >= 1, "spems.azimuth_samples must be >= 1");

    const auto& e = c.experiment;
    const auto axis = experiment_axes().find(e.type);
    require(axis != experiment_axes().end(), "unknown experiment.type '" + e.type + "'");
    require(e.sweep_axis == axis->second,
            "experiment.sweep_axis for '" + e.type + "' must be '" + axis->second + "'");
    require(e.range.count >= 1, "empty sweep range (experiment.range.count must be >= 1)");
    require(std::isfinite(e.range.start) && std::isfinite(e.range.stop), "experiment.range must be finite");
    require(e.samples >= 1, "experiment.samples must be >= 1");
    for (double v : e.range.values()) {
        if (e.sweep_axis == "panel_n") {
            require(v >= 2.0, "panel_n sweep values must be >= 2");
        } else if (e.sweep_axis == "bandwidth_hz") {
            require(v > 0.0 && v < 2.0 * c.f0_hz, "bandwidth sweep values must be in (0, 2 f0)");
        } else if (e.sweep_axis == "frequency_hz") {
            require(std::abs(v) < c.f0_hz, "frequency sweep values must satisfy |f| < f0");
        } else if (e.sweep_axis == "three_sigma_m") {
            require(v >= 0.0, "three_sigma_m sweep values must be nonnegative");
        } else if (e.sweep_axis == "phi_deg") {
            require(v >= 0.0 && v <= 180.0, "phi_deg sweep values must be in [0, 180]");
        }
    }
    if (e.type == "rcs-vs-freq") {
        require(!e.phi_deg.empty(), "experiment.phi_deg must not be empty");
    }
    if (e.type == "avg-rcs-vs-size" || e.type == "peb-vs-size" || e.type == "peb-vs-bandwidth") {
        require(!e.three_sigma_m.empty(), "experiment.three_sigma_m must not be empty");
        for (double s : e.three_sigma_m) {
            require(s >= 0.0 && std::isfinite(s), "experiment.three_sigma_m must be nonnegative");
            if (e.type != "avg-rcs-vs-size") {
                require(s > 0.0, "hybrid bounds need three_sigma_m > 0");
            }
        }
    }
}

Scenario make_scenario(const ScenarioConfig& c)
{
    Scenario s;
    if (c.terminal_preset == "grid") {
        s.terminal = default_terminal(c.f0_hz, c.bandwidth_hz, c.rx_spacing_over_lambda, c.rx_per_side);
    } else {
        s.terminal.f0 = c.f0_hz;
        s.terminal.bandwidth = c.bandwidth_hz;
        s.terminal.tx.clear();
        s.terminal.rx.clear();
        for (const auto& p : c.tx_m) {
            s.terminal.tx.emplace_back(p[0], p[1], p[2]);
        }
        for (const auto& p : c.rx_m) {
            s.terminal.rx.emplace_back(p[0], p[1], p[2]);
        }
    }
    s.terminal.tx_power_dbm = c.tx_power_dbm;
    s.terminal.noise_psd_dbm_hz = c.n0_dbm_hz;
    s.panel = make_panel(c.panel_n, c.panel_m, c.d_over_lambda * kSpeedOfLight / c.f0_hz, c.f0_hz);
    s.pose = make_pose(Vec3(c.x_m[0], c.x_m[1], c.x_m[2]), c.psi_rad);
    s.sigma = c.sigma_m;
    s.pulse_duration = c.pulse_duration_s;
    s.quadrature = QuadratureSettings{c.quadrature_points, c.quadrature_tolerance, c.quadrature_max_points, false};
    configure_matched(s);
    validate_scenario(s);
    return s;
}

namespace {

struct Preset {
    std::string description;
    ScenarioConfig config;
};

const std::map<std::string, Preset>& presets()
{
    static const std::map<std::string, Preset> table = [] {
        std::map<std::string, Preset> t;
        ScenarioConfig base;

        ScenarioConfig size = base;
        t["peb-vs-size"] = {"PEB versus panel size, N = M in [50, 150], B = 1 GHz", size};
        t["default"] = {"alias of peb-vs-size", size};

        ScenarioConfig bw = base;
        bw.experiment.type = "peb-vs-bandwidth";
        bw.experiment.sweep_axis = "bandwidth_hz";
        bw.experiment.range = {1e9, 8e9, 8};
        t["peb-vs-bandwidth"] = {"PEB versus bandwidth, B in [1, 8] GHz, 100 x 100 panel", bw};

        ScenarioConfig freq = base;
        freq.panel_n = freq.panel_m = 104; // ~10 cm at lambda/4
        freq.bandwidth_hz = 4e9;
        freq.experiment.type = "rcs-vs-freq";
        freq.experiment.sweep_axis = "frequency_hz";
        freq.experiment.range = {-2e9, 2e9, 401};
        t["rcs-vs-freq"] = {"RCS versus frequency for elevations 0..80 deg, 10 cm panel", freq};

        ScenarioConfig avg = base;
        avg.experiment.type = "avg-rcs-vs-size";
        avg.experiment.sweep_axis = "panel_n";
        avg.experiment.range = {50.0, 150.0, 11};
        avg.experiment.three_sigma_m = {0.0, 0.1, 0.5, 1.0, 2.0};
        t["avg-rcs-vs-size"] = {"Monte-Carlo average RCS versus panel size and position error", avg};

        ScenarioConfig align = base;
        align.experiment.type = "align-sim";
        align.experiment.sweep_axis = "three_sigma_m";
        align.experiment.range = {0.5, 2.0, 4};
        align.experiment.samples = 1000;
        t["align-sim"] = {"codebook sweep efficacy and training budget versus position error", align};

        ScenarioConfig spems = base;
        spems.experiment.type = "spems-coverage";
        spems.experiment.sweep_axis = "phi_deg";
        spems.experiment.range = {5.0, 85.0, 17};
        t["spems-coverage"] = {"SP-EMS composite RCS over azimuth versus elevation, 36 x 6 modules", spems};
        return t;
    }();
    return table;
}

} // namespace

std::vector<std::string> preset_names()
{
    std::vector<std::string> out;
    for (const auto& [name, p] : presets()) {
        out.push_back(name);
    }
    return out;
}

std::string preset_description(const std::string& name)
{
    const auto it = presets().find(name);
    if (it == presets().end()) {
        throw ValidationError("unknown preset '" + name + "'");
    }
    return it->second.description;
}

ScenarioConfig preset_config(const std::string& name)
{
    const auto it = presets().find(name);
    if (it == presets().end()) {
        throw ValidationError("unknown preset '" + name + "'");
    }
    return it->second.config;
}

} // namespace emslb
