#pragma once

// Far-field received-signal model: scattering amplitude beta, per-channel delays,
// noiseless received spectrum a_l(f) and its analytic parameter derivatives.

#include "emslb/scenario.hpp"

#include <complex>
#include <vector>

namespace emslb {

// Unknowns of the localization problem: EMS position and the configured angles.
struct ParamVector {
    Vec3 x = Vec3::Zero();
    AnglePair xi_bar{};

    Eigen::Matrix<double, 5, 1> as_vector() const;
    static ParamVector from_vector(const Eigen::Matrix<double, 5, 1>& v);
};

inline constexpr int kParamDim = 5;

// pose.x and panel.config of the scenario.
ParamVector params_of(const Scenario& s);

// Wideband: beta follows the squinted array factor at f0 + f.
// Narrowband: beta is frozen at the carrier; only the delay phase ramps over f.
enum class Band { Wideband, Narrowband };

const char* band_name(Band b);

// beta = sqrt(c^2 / (f0^2 (4 pi)^3 |x|^4) * Gamma) e^{j gamma}.
std::complex<double> beta(double f, const Pose& pose, const RisPanel& panel, double gamma,
                          const AnglePair& xi, const AnglePair& xi_bar);

// Real magnitude b >= 0 of beta for the scenario at the given parameters, and db/dtheta.
struct AmplitudeGradient {
    double b = 0.0;
    Eigen::Matrix<double, 5, 1> grad = Eigen::Matrix<double, 5, 1>::Zero();
};

// Throws PoleSingularity when the incidence or configured elevation sits on the panel
// normal (the azimuth derivative is undefined there), DegenerateGeometry for x = 0.
AmplitudeGradient amplitude_gradient(double f, const Scenario& s, const ParamVector& p, Band band);

// Round-trip delay of channel l at position x: 2|x|/c - (s_l + r_l)^T x_hat / c.
double channel_delay(const SensingTerminal& t, std::size_t l, const Vec3& x);

// d(channel_delay)/dx.
Vec3 channel_delay_gradient(const SensingTerminal& t, std::size_t l, const Vec3& x);

// Noiseless mean a_l(f) = S(f) beta exp(-j 2 pi (f0 + f) T_l) at explicit parameters.
std::complex<double> model_mean(double f, std::size_t l, const Scenario& s, const ParamVector& p,
                                Band band);

std::complex<double> received_spectrum(double f, std::size_t l, const Scenario& s);
std::complex<double> narrowband_received(double f, std::size_t l, const Scenario& s);

// Per-channel SNR in dB: integral of |a_l(f)|^2 over the band divided by N0.
// Every channel carries the same energy in the far-field model.
std::vector<double> channel_snr_db(const Scenario& s, int points = 1025);

DelayDecomposition linearized_delays(const Scenario& s);

} // namespace emslb
