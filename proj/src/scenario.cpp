#include "emslb/scenario.hpp"

#include "emslb/errors.hpp"

#include <cmath>

namespace emslb {

double dbm_to_watt(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watt_to_dbm(double w)
{
    return 10.0 * std::log10(w) + 30.0;
}

void validate_terminal(const SensingTerminal& t)
{
    if (t.channels() == 0) {
        throw ValidationError("terminal: at least one Tx and one Rx antenna are required");
    }
    if (!(t.bandwidth > 0.0) || !std::isfinite(t.bandwidth)) {
        throw ValidationError("terminal: bandwidth must be positive");
    }
    if (!(t.f0 > t.bandwidth / 2.0) || !std::isfinite(t.f0)) {
        throw ValidationError("terminal: carrier must exceed half the bandwidth");
    }
    if (!std::isfinite(t.tx_power_dbm) || !std::isfinite(t.noise_psd_dbm_hz)) {
        throw ValidationError("terminal: power and noise density must be finite");
    }
    for (const auto& p : t.tx) {
        if (!p.allFinite()) {
            throw ValidationError("terminal: non-finite Tx position");
        }
    }
    for (const auto& p : t.rx) {
        if (!p.allFinite()) {
            throw ValidationError("terminal: non-finite Rx position");
        }
    }
}

SensingTerminal default_terminal(double f0, double bandwidth, double rx_spacing_over_lambda,
                                 int rx_per_side)
{
    SensingTerminal t;
    t.f0 = f0;
    t.bandwidth = bandwidth;
    t.tx = {Vec3::Zero()};
    const double dr = rx_spacing_over_lambda * kSpeedOfLight / f0;
    const double c = 0.5 * (rx_per_side - 1);
    t.rx.reserve(static_cast<std::size_t>(rx_per_side) * rx_per_side);
    for (int iy = 0; iy < rx_per_side; ++iy) {
        for (int iz = 0; iz < rx_per_side; ++iz) {
            t.rx.emplace_back(0.0, (iy - c) * dr, (iz - c) * dr);
        }
    }
    return t;
}

double Waveform::spectrum(double f) const
{
    // The relative slack keeps band-edge grid nodes inside despite rounding.
    return std::abs(f) <= 0.5 * bandwidth * (1.0 + 1e-12) ? std::sqrt(psd()) : 0.0;
}

Waveform Scenario::waveform() const
{
    return Waveform{terminal.bandwidth, terminal.tx_power_w() * pulse_duration};
}

Scenario& configure_matched(Scenario& s)
{
    s.panel.config = s.incidence();
    return s;
}

void validate_scenario(const Scenario& s)
{
    validate_terminal(s.terminal);
    if (s.panel.n_x < 2 || s.panel.n_y < 2 || s.panel.n_x % 2 || s.panel.n_y % 2) {
        throw ValidationError("panel: element counts must be even and >= 2");
    }
    if (!(s.panel.d > 0.0)) {
        throw ValidationError("panel: element spacing must be positive");
    }
    if (std::abs(s.panel.f0 - s.terminal.f0) > 1e-9 * s.terminal.f0) {
        throw ValidationError("panel and terminal carriers differ");
    }
    if (!s.pose.x.allFinite() || !(s.pose.x.norm() > 0.0) || !std::isfinite(s.pose.psi)) {
        throw ValidationError("pose: position must be finite and away from the terminal");
    }
    if (!(s.sigma >= 0.0) || !std::isfinite(s.sigma)) {
        throw ValidationError("prior: sigma must be nonnegative");
    }
    if (!(s.pulse_duration > 0.0) || !std::isfinite(s.pulse_duration)) {
        throw ValidationError("waveform: pulse duration must be positive");
    }
    if (s.point_rcs && !(*s.point_rcs > 0.0)) {
        throw ValidationError("point scatterer RCS must be positive");
    }
    const auto& q = s.quadrature;
    if (q.points < 3 || q.points % 2 == 0 || q.max_points < q.points || !(q.tolerance > 0.0)) {
        throw ValidationError("quadrature: need odd points >= 3, max_points >= points, tolerance > 0");
    }
}

Scenario default_scenario()
{
    Scenario s;
    configure_matched(s);
    return s;
}

} // namespace emslb
