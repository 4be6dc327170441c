#pragma once

// Reference frames, angle transforms and propagation delays.
//
// Global frame: sensing terminal phase center at the origin. The EMS local frame
// is the global one rotated counterclockwise about z by the vehicle heading psi;
// panel elements lie on the local x-y plane.

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace emslb {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact SI value
inline constexpr double kPi = 3.14159265358979323846;

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Azimuth/elevation pair. theta in (-pi, pi], phi (polar angle from +z) in [0, pi].
struct AnglePair {
    double theta = 0.0;
    double phi = 0.0;

    friend bool operator==(const AnglePair&, const AnglePair&) = default;
};

struct Pose {
    Vec3 x = Vec3::Zero(); // EMS phase center, meters
    double psi = 0.0;      // heading, radians in (-pi, pi]
};

// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

// Validates finiteness and normalizes psi.
Pose make_pose(const Vec3& x, double psi);

// Counterclockwise rotation about z. Throws InvalidArgument on non-finite psi.
Mat3 rotation_z(double psi);

// theta = atan2(y, x), phi = acos(z/|v|). On the z axis theta is reported as 0.
// Throws DegenerateGeometry for the zero vector.
AnglePair cart_to_angles(const Vec3& v);

// Direction cosines (sin(phi)cos(theta), sin(phi)sin(theta), cos(phi)).
Vec3 unit_vector(const AnglePair& xi);

// Direction from the EMS towards the terminal, expressed in the EMS local frame:
// J(-Q_z(psi)^T (x - terminal)). For psi = 0 this is cart_to_angles(terminal - x).
AnglePair ems_incidence_angles(const Pose& pose, const Vec3& terminal_center = Vec3::Zero());

// Pointing angles from the terminal phase center to the EMS, J(x).
AnglePair terminal_pointing_angles(const Vec3& x);

// Global position of element (n, m): x + Q_z(psi) [n d, m d, 0]^T.
Vec3 element_position(const Pose& pose, int n, int m, double d);

struct ExactDelays {
    double tau_i = 0.0; // Tx -> element, seconds
    double tau_o = 0.0; // element -> Rx, seconds
};

ExactDelays exact_delays(const Vec3& tx, const Vec3& rx, const Vec3& x_nm);

// First-order (planar wavefront) split of the element delays:
//   tau_i(l, n, m) ~ tau0 + dtau_i[l] + dtau_nm(n, m)
//   tau_o(l, n, m) ~ tau0 + dtau_o[l] + dtau_nm(n, m)
// dtau_nm is indexed (n + N/2, m + M/2).
struct DelayDecomposition {
    double tau0 = 0.0;
    std::vector<double> dtau_i;
    std::vector<double> dtau_o;
    Eigen::MatrixXd dtau_nm;
    double aperture_to_range = 0.0; // max(panel, terminal aperture) / |x|
    std::vector<std::string> warnings;
};

inline constexpr double kFarFieldWarningRatio = 0.05;

// Excess delay of element (n, m) of a planar panel for the local direction xi:
// -(d/c)(n sin(phi)cos(theta) + m sin(phi)sin(theta)). Elements displaced towards
// the terminal are reached earlier, hence the sign.
double ems_excess_delay(const AnglePair& xi, int n, int m, double d);

// N, M must be even. Emits a warning (never fails) when the far-field ratio exceeds
// kFarFieldWarningRatio. Throws DegenerateGeometry for |x| = 0.
DelayDecomposition linearized_delays(const Pose& pose, int n_x, int n_y, double d,
                                     std::span<const Vec3> tx, std::span<const Vec3> rx);

} // namespace emslb
