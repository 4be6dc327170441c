#pragma once

// Experiment state shared by the channel and bound computations: sensing terminal,
// EMS pose and panel, waveform and quadrature settings.

#include "emslb/geometry.hpp"
#include "emslb/reflector.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace emslb {

double dbm_to_watt(double dbm);
double watt_to_dbm(double w);

// Channel l pairs tx[l / rx.size()] with rx[l % rx.size()].
struct SensingTerminal {
    std::vector<Vec3> tx;
    std::vector<Vec3> rx;
    double tx_power_dbm = 23.0;      // per channel, average
    double noise_psd_dbm_hz = -173.0;
    double f0 = 78.5e9;
    double bandwidth = 1e9;

    std::size_t channels() const { return tx.size() * rx.size(); }
    const Vec3& tx_of(std::size_t l) const { return tx[l / rx.size()]; }
    const Vec3& rx_of(std::size_t l) const { return rx[l % rx.size()]; }
    double tx_power_w() const { return dbm_to_watt(tx_power_dbm); }
    double n0() const { return dbm_to_watt(noise_psd_dbm_hz); } // W/Hz
};

// Throws ValidationError unless L >= 1, B > 0 and f0 > B/2.
void validate_terminal(const SensingTerminal& t);

// One Tx at the origin and a rx_per_side x rx_per_side Rx grid on the y-z plane,
// centered on the origin, spaced rx_spacing_over_lambda * c / f0.
SensingTerminal default_terminal(double f0, double bandwidth, double rx_spacing_over_lambda = 0.5,
                                 int rx_per_side = 20);

// Flat baseband spectrum: |S(f)|^2 = energy / bandwidth on [-B/2, B/2], zero outside.
struct Waveform {
    double bandwidth = 1e9;
    double energy = 0.0; // J

    double psd() const { return energy / bandwidth; }
    double spectrum(double f) const;
};

struct QuadratureSettings {
    int points = 1025;       // trapezoid nodes on [-B/2, B/2], odd
    double tolerance = 1e-3; // Richardson error estimate, relative
    int max_points = 16385;
    bool carrier_only = false; // B -> 0 limit: integrand at f = 0 times the pulse energy
};

struct Scenario {
    SensingTerminal terminal = default_terminal(78.5e9, 1e9);
    RisPanel panel = square_panel(100, 78.5e9);
    Pose pose{Vec3(10.0, 5.0, -6.5), 0.0};
    double sigma = 2.0 / 3.0;     // isotropic coarse-position std, m
    double gamma = 0.0;           // residual scattering phase, known
    double pulse_duration = 1e-6; // s; pulse energy = per-channel power * duration
    // When set, a frequency-flat, direction-independent point scatterer of this RCS (m^2)
    // replaces the panel response (bare vehicle).
    std::optional<double> point_rcs;
    QuadratureSettings quadrature{};

    Waveform waveform() const;
    AnglePair incidence() const { return ems_incidence_angles(pose); }
    const AnglePair& configured() const { return panel.config; }
};

// Sets panel.config to the true incidence angles.
Scenario& configure_matched(Scenario& s);

// Throws ValidationError on inconsistent carrier, bad counts, nonpositive quantities.
void validate_scenario(const Scenario& s);

// Default numerical setting: f0 = 78.5 GHz, 23 dBm per channel, N0 = -173 dBm/Hz,
// 1 Tx + 20x20 Rx, 100x100 panel at lambda/4, x = [10, 5, -6.5] m, 3 sigma = 2 m, B = 1 GHz.
Scenario default_scenario();

} // namespace emslb
