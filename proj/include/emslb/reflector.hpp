#pragma once

// Planar EMS reflection model: retro-reflective phase profile, frequency-dependent
// array factor (beam squint), peak RCS, corner-reflector benchmark and the modular
// static-passive reflector built from several pre-configured panels.

#include "emslb/geometry.hpp"

#include <string>
#include <vector>

namespace emslb {

struct RisPanel {
    int n_x = 2;        // N, elements along local x (even)
    int n_y = 2;        // M, elements along local y (even)
    double d = 0.0;     // element spacing, m
    double f0 = 0.0;    // carrier, Hz
    AnglePair config{}; // angles the phase profile is set for

    double area() const { return static_cast<double>(n_x) * n_y * d * d; }
    double side_x() const { return n_x * d; }
    double side_y() const { return n_y * d; }
    double wavelength() const { return kSpeedOfLight / f0; }
};

// Validates N, M even and >= 2, d > 0, f0 > 0.
RisPanel make_panel(int n_x, int n_y, double d, double f0, AnglePair config = {});

// Square N x N panel with spacing spacing_over_lambda * c / f0.
RisPanel square_panel(int n, double f0, double spacing_over_lambda = 0.25, AnglePair config = {});

// Even element count (>= 2) whose side n * d is closest to side_m.
int even_count_for_side(double side_m, double d);

// Phi(n, m) = (4 pi f0 / c) d (n sin(phi) cos(theta) + m sin(phi) sin(theta)), unwrapped.
// Entry (i, j) holds element n = i - N/2, m = j - M/2.
Eigen::MatrixXd phase_profile(const RisPanel& panel, const AnglePair& xi_bar);

// sin(n a) / (n sin a), continuous through the removable singularities a = k pi.
double dirichlet(int n, double a);
// d/da of dirichlet(n, a).
double dirichlet_derivative(int n, double a);

// Squint arguments alpha_x, alpha_y for baseband frequency f (Hz, relative to f0).
struct SquintArguments {
    double ax = 0.0;
    double ay = 0.0;
};
SquintArguments squint_arguments(const RisPanel& panel, double f, const AnglePair& xi,
                                 const AnglePair& xi_bar);

// Normalized array factor G(f, xi | xi_bar) in [0, 1], closed form.
double array_factor(const RisPanel& panel, double f, const AnglePair& xi, const AnglePair& xi_bar);

// Same quantity from the explicit double sum over all N*M elements. O(NM); test oracle.
double array_factor_bruteforce(const RisPanel& panel, double f, const AnglePair& xi,
                               const AnglePair& xi_bar);

// Flat-plate peak RCS 4 pi f^2 A^2 / c^2 at absolute frequency f.
double peak_rcs(double area, double f);

// Trihedral corner reflector RCS 12 pi f0^2 a^4 / c^2.
double corner_rcs(double f0, double a);

struct PanelSize {
    double area = 0.0;
    double side = 0.0;
};

// Panel whose peak RCS sits deficit_db below a corner reflector of side a:
// A = a^2 sqrt(3 / 10^(deficit/10)).
PanelSize size_for_detectability(double a_corner, double deficit_db = 10.0);

// Gamma_max(f0 + f) * G(f, xi | xi_bar).
double rcs(const RisPanel& panel, double f, const AnglePair& xi, const AnglePair& xi_bar);

struct Beamwidths {
    double theta = 0.0; // full -3 dB width in azimuth, rad
    double phi = 0.0;   // full -3 dB width in elevation, rad
    bool saturated = false;
};

// -3 dB widths of G(0, . | xi) along the azimuth and elevation coordinates, by bisection.
// At the pole the azimuth coordinate is degenerate; the width is then measured as an arc
// along the cut orthogonal to the elevation cut.
Beamwidths beamwidths(const RisPanel& panel, const AnglePair& xi);

// Full -3 dB width of G in direction-cosine space (independent of pointing).
double half_power_width_u(const RisPanel& panel);

// Great-circle angle between two directions.
double angular_separation(const AnglePair& a, const AnglePair& b);

struct SpemsReflector {
    RisPanel module;
    std::vector<AnglePair> directions; // xi_bar_p
    std::vector<Vec3> offsets;         // p_p, local frame, m
    std::vector<std::string> warnings;

    std::size_t size() const { return directions.size(); }
};

// Requires at least one direction; offsets may be empty (all zero) or one per module.
// Directions closer than half the module beamwidth produce a warning.
SpemsReflector make_spems(const RisPanel& module, std::vector<AnglePair> directions,
                          std::vector<Vec3> offsets = {});

// max_p rcs(module, f, xi, xi_bar_p). Returns the winning module index through best_module.
double spems_composite_rcs(const SpemsReflector& reflector, double f, const AnglePair& xi,
                           std::size_t* best_module = nullptr);

// Regular direction grid: ceil(2 pi / dtheta) azimuths times ceil(span / dphi) elevations,
// at cell centers, elevation measured from phi_start.
std::vector<AnglePair> spems_module_grid(const Beamwidths& module_beamwidths,
                                         double elevation_span, double phi_start = 0.0);

} // namespace emslb
