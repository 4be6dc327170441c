#pragma once

// Versioned JSON scenario configuration. Every field has a default; unknown keys are
// rejected so typos surface as validation errors.

#include "emslb/scenario.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace emslb {

inline constexpr int kSchemaVersion = 1;

struct SweepRange {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    std::vector<double> values() const; // linspace, inclusive

    friend bool operator==(const SweepRange&, const SweepRange&) = default;
};

struct ExperimentConfig {
    std::string type = "peb-vs-size";
    std::string sweep_axis = "panel_n";
    SweepRange range{50.0, 150.0, 5};
    std::size_t samples = 10000;   // Monte-Carlo draws or alignment trials
    std::uint64_t seed = 20240601;
    std::vector<double> phi_deg{0.0, 20.0, 40.0, 60.0, 80.0}; // rcs-vs-freq curves
    std::vector<double> three_sigma_m{0.5, 2.0};              // prior levels for bound/RCS sweeps

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct ScenarioConfig {
    int schema_version = kSchemaVersion;

    // terminal
    std::string terminal_preset = "grid"; // "grid" or "explicit"
    int rx_per_side = 20;
    double rx_spacing_over_lambda = 0.5;
    std::vector<std::array<double, 3>> tx_m;
    std::vector<std::array<double, 3>> rx_m;

    // panel
    int panel_n = 100;
    int panel_m = 100;
    double d_over_lambda = 0.25;
    double f0_hz = 78.5e9;

    // pose
    std::array<double, 3> x_m{10.0, 5.0, -6.5};
    double psi_rad = 0.0;

    // prior
    double sigma_m = 2.0 / 3.0;

    // waveform
    double bandwidth_hz = 1e9;
    double tx_power_dbm = 23.0;
    double n0_dbm_hz = -173.0;
    double pulse_duration_s = 1e-6;

    // bounds
    int quadrature_points = 1025;
    double quadrature_tolerance = 1e-3;
    int quadrature_max_points = 16385;
    std::size_t hybrid_samples = 512;
    double bare_rcs_deficit_db = 10.0;
    std::array<double, 3> bare_bias_m{0.1, 0.1, 0.1};
    double bare_panel_side_m = 0.075;

    // alignment
    double kappa = 3.0;
    bool scaled_step = false;
    double speed_mps = 50.0 / 3.6;
    double t_pri_s = 50e-6;
    double d_min_m = 10.0;
    double phi_min_deg = 45.0;

    // spems
    int spems_module_n = 16;
    std::array<double, 2> spems_beamwidth_deg{10.0, 15.0}; // module grid spacing (theta, phi)
    double spems_span_deg = 90.0;
    int spems_azimuth_samples = 360;

    ExperimentConfig experiment{};

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Parses JSON text. Each override is "dotted.key=value"; the value is read as JSON when
// possible (numbers, arrays, booleans) and as a string otherwise. Throws ValidationError.
ScenarioConfig parse_config(const std::string& json_text, const std::vector<std::string>& overrides = {});

// Reads a file, or "preset:NAME". Throws ValidationError with the path in the message.
ScenarioConfig load_config(const std::string& path_or_preset,
                           const std::vector<std::string>& overrides = {});

// Canonical pretty-printed JSON (sorted keys, two-space indent, trailing newline).
std::string dump_config(const ScenarioConfig& cfg);

// FNV-1a 64 of the compact canonical dump, 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

// Range and consistency checks. Throws ValidationError.
void validate_config(const ScenarioConfig& cfg);

Scenario make_scenario(const ScenarioConfig& cfg);

std::vector<std::string> preset_names();
std::string preset_description(const std::string& name);
ScenarioConfig preset_config(const std::string& name);

} // namespace emslb
