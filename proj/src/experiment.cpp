#include "emslb/experiment.hpp"

#include "emslb/alignment.hpp"
#include "emslb/bounds.hpp"
#include "emslb/errors.hpp"
#include "emslb/reflector.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace emslb {

std::string Column::header() const
{
    return (unit.empty() || unit == "1" || unit == "-") ? name : name + "-" + unit;
}

void ResultTable::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size()) {
        throw InvalidArgument("ResultTable: row width " + std::to_string(row.size()) +
                              " does not match " + std::to_string(columns.size()) + " columns");
    }
    for (const auto& c : row) {
        if (const double* v = std::get_if<double>(&c); v && !std::isfinite(*v)) {
            throw InvalidArgument("ResultTable: non-finite value");
        }
    }
    rows.push_back(std::move(row));
}

std::size_t ResultTable::column(const std::string& header) const
{
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].header() == header) {
            return i;
        }
    }
    throw InvalidArgument("ResultTable: no column '" + header + "'");
}

namespace {

constexpr double kDeg = kPi / 180.0;

double db(double x)
{
    return 10.0 * std::log10(x);
}

int even_panel_count(double v)
{
    const long n = 2 * std::lround(v / 2.0);
    return static_cast<int>(std::max(2L, n));
}

Scenario with_panel(const Scenario& base, const ScenarioConfig& cfg, int n)
{
    Scenario s = base;
    s.panel = make_panel(n, n, cfg.d_over_lambda * kSpeedOfLight / cfg.f0_hz, cfg.f0_hz);
    configure_matched(s);
    return s;
}

std::string scenario_id(std::size_t i)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "s%03zu", i);
    return buf;
}

void rcs_vs_freq(const ScenarioConfig& cfg, ResultTable& t)
{
    const Scenario s = make_scenario(cfg);
    t.columns = {{"phi", "deg"}, {"f", "Hz"}, {"rcs", "m2"}, {"rcs", "dBsm"}, {"loss", "dB"}};
    for (double phi_deg : cfg.experiment.phi_deg) {
        const AnglePair xi{0.0, phi_deg * kDeg};
        const double peak = rcs(s.panel, 0.0, xi, xi);
        for (double f : cfg.experiment.range.values()) {
            // Exact nulls have zero RCS; floor them so the dB columns stay finite.
            const double v = std::max(rcs(s.panel, f, xi, xi), 1e-300);
            t.add_row({phi_deg, f, v, db(v), db(v / peak)});
        }
    }
}

void avg_rcs_vs_size(const ScenarioConfig& cfg, ResultTable& t, Execution exec)
{
    const Scenario base = make_scenario(cfg);
    t.columns = {{"panel-n", "1"},   {"panel-side", "m"},   {"three-sigma", "m"},
                 {"peak-rcs", "dBsm"}, {"mean-rcs", "dBsm"}, {"std-rcs", "m2"}, {"gap", "dB"}};
    for (double v : cfg.experiment.range.values()) {
        const int n = even_panel_count(v);
        const Scenario s = with_panel(base, cfg, n);
        for (double three_sigma : cfg.experiment.three_sigma_m) {
            const RcsStatistics st = average_rcs_under_error(
                s, PositionPrior{s.pose.x, three_sigma / 3.0}, cfg.experiment.samples,
                cfg.experiment.seed, exec);
            t.add_row({static_cast<double>(n), s.panel.side_x(), three_sigma, db(st.peak), db(st.mean),
                       st.stddev, db(st.peak) - db(st.mean)});
        }
    }
}

void align_sim(const ScenarioConfig& cfg, ResultTable& t, Execution exec)
{
    const Scenario s = make_scenario(cfg);
    const Beamwidths bw = beamwidths(s.panel, s.incidence());
    const MobilityBudget budget =
        training_budget(cfg.speed_mps, cfg.t_pri_s, cfg.d_min_m, cfg.phi_min_deg * kDeg, bw);
    t.columns = {{"three-sigma", "m"},        {"trials", "1"},          {"codebook-size-mean", "1"},
                 {"within-3dB-fraction", "1"}, {"min-gain", "dB"},       {"beamwidth-theta", "deg"},
                 {"beamwidth-phi", "deg"},     {"kq-max", "1"}};
    if (bw.saturated) {
        t.warnings.push_back("panel beam wider than the search range; beamwidths saturated");
    }
    for (double three_sigma : cfg.experiment.range.values()) {
        const AlignmentStudy st = alignment_study(s, three_sigma / 3.0, cfg.kappa, cfg.experiment.samples,
                                                  cfg.experiment.seed, cfg.scaled_step, exec);
        t.add_row({three_sigma, static_cast<double>(cfg.experiment.samples), st.mean_codebook_size,
                   st.fraction_within_3db, st.min_gain_db, bw.theta / kDeg, bw.phi / kDeg, budget.kq_max});
    }
}

void spems_coverage(const ScenarioConfig& cfg, ResultTable& t)
{
    const RisPanel module = square_panel(cfg.spems_module_n, cfg.f0_hz, cfg.d_over_lambda);
    const Beamwidths spacing{cfg.spems_beamwidth_deg[0] * kDeg, cfg.spems_beamwidth_deg[1] * kDeg, false};
    const SpemsReflector refl = make_spems(module, spems_module_grid(spacing, cfg.spems_span_deg * kDeg));
    for (const auto& w : refl.warnings) {
        t.warnings.push_back(w);
    }
    const double peak = peak_rcs(module.area(), module.f0);
    const int n_az = cfg.spems_azimuth_samples;
    t.columns = {{"phi", "deg"}, {"modules", "1"}, {"min-rcs", "dBsm"}, {"mean-rcs", "dBsm"}, {"worst-loss", "dB"}};
    for (double phi_deg : cfg.experiment.range.values()) {
        double lo = 0.0;
        double sum = 0.0;
        for (int i = 0; i < n_az; ++i) {
            const AnglePair xi{wrap_angle(-kPi + (i + 0.5) * 2.0 * kPi / n_az), phi_deg * kDeg};
            const double v = std::max(spems_composite_rcs(refl, 0.0, xi), 1e-300);
            lo = (i == 0) ? v : std::min(lo, v);
            sum += v;
        }
        t.add_row({phi_deg, static_cast<double>(refl.size()), db(lo), db(sum / n_az), db(lo / peak)});
    }
}

void bound_columns(ResultTable& t)
{
    t.columns = {{"scenario-id", "-"}, {"mode", "-"}, {"panel-side", "m"}, {"B", "Hz"},
                 {"sigma", "m"},       {"peb", "m"},  {"cond-number", "1"}};
}

// All bound variants for one sweep point. Bounds that need no prior report sigma = 0.
void bound_rows(const ScenarioConfig& cfg, const Scenario& s, const std::string& id, ResultTable& t,
                Execution exec)
{
    const double side = s.panel.side_x();
    const double bw = s.terminal.bandwidth;
    auto row = [&](const std::string& mode, double sigma, double peb, double cond) {
        t.add_row({id, mode, side, bw, sigma, peb, cond});
    };

    for (Band band : {Band::Wideband, Band::Narrowband}) {
        const InfoMatrix f = fim(s, params_of(s), band, exec);
        const BoundResult unknown = position_crb(f, mode_label(band, BoundKind::PositionCrb));
        row(unknown.mode, 0.0, unknown.peb, unknown.condition);
        const BoundResult perfect = crb_perfect_config(s, band, exec);
        row(perfect.mode, 0.0, perfect.peb, perfect.condition);
        for (double three_sigma : cfg.experiment.three_sigma_m) {
            const double sigma = three_sigma / 3.0;
            const HybridInfo h = hybrid_im(s, PositionPrior{s.pose.x, sigma}, band, cfg.hybrid_samples,
                                           cfg.experiment.seed, Expectation::MonteCarlo, exec);
            const BoundResult hcrb = crb(h.j, mode_label(band, BoundKind::Hcrb));
            row(hcrb.mode, sigma, hcrb.peb, hcrb.condition);
        }
    }
    const Vec3 bias(cfg.bare_bias_m[0], cfg.bare_bias_m[1], cfg.bare_bias_m[2]);
    const BareVehicleResult bare =
        bare_vehicle_benchmark(s, cfg.bare_rcs_deficit_db, bias, cfg.bare_panel_side_m, exec);
    row("bare-vehicle", 0.0, bare.bound.peb, bare.bound.condition);
    row("bare-vehicle/rmse", 0.0, bare.rmse_bound, bare.bound.condition);
}

void peb_vs_size(const ScenarioConfig& cfg, ResultTable& t, Execution exec)
{
    const Scenario base = make_scenario(cfg);
    bound_columns(t);
    const auto values = cfg.experiment.range.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        bound_rows(cfg, with_panel(base, cfg, even_panel_count(values[i])), scenario_id(i), t, exec);
    }
}

void peb_vs_bandwidth(const ScenarioConfig& cfg, ResultTable& t, Execution exec)
{
    bound_columns(t);
    const auto values = cfg.experiment.range.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
        ScenarioConfig c = cfg;
        c.bandwidth_hz = values[i];
        bound_rows(c, make_scenario(c), scenario_id(i), t, exec);
    }
}

std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_text(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

} // namespace

ResultTable run_experiment(const ScenarioConfig& cfg, Execution exec)
{
    validate_config(cfg);
    ResultTable t;
    t.provenance = {
        {"emslb-version", kVersion},
        {"schema-version", std::to_string(cfg.schema_version)},
        {"experiment", cfg.experiment.type},
        {"config-hash", config_hash(cfg)},
        {"seed", std::to_string(cfg.experiment.seed)},
    };
    const std::string& type = cfg.experiment.type;
    if (type == "rcs-vs-freq") {
        rcs_vs_freq(cfg, t);
    } else if (type == "avg-rcs-vs-size") {
        avg_rcs_vs_size(cfg, t, exec);
    } else if (type == "align-sim") {
        align_sim(cfg, t, exec);
    } else if (type == "spems-coverage") {
        spems_coverage(cfg, t);
    } else if (type == "peb-vs-size") {
        peb_vs_size(cfg, t, exec);
    } else if (type == "peb-vs-bandwidth") {
        peb_vs_bandwidth(cfg, t, exec);
    } else {
        throw ValidationError("unknown experiment type '" + type + "'");
    }
    return t;
}

std::string to_csv(const ResultTable& table)
{
    std::string out;
    for (const auto& [k, v] : table.provenance) {
        out += "# " + k + "=" + v + "\n";
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out += (i ? "," : "") + format_text(table.columns[i].header());
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            if (const double* v = std::get_if<double>(&row[i])) {
                out += format_number(*v);
            } else {
                out += format_text(std::get<std::string>(row[i]));
            }
        }
        out += "\n";
    }
    return out;
}

void emit_csv(const ResultTable& table, const std::string& path)
{
    const std::string text = to_csv(table);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) {
        throw Error("write to '" + path + "' failed");
    }
}

} // namespace emslb
