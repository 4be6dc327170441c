#include "emslb/geometry.hpp"

#include "emslb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace emslb {

double wrap_angle(double a)
{
    double w = std::remainder(a, 2.0 * kPi); // [-pi, pi]
    if (w <= -kPi) {
        w += 2.0 * kPi;
    }
    return w;
}

Pose make_pose(const Vec3& x, double psi)
{
    if (!x.allFinite() || !std::isfinite(psi)) {
        throw InvalidArgument("pose: position and heading must be finite");
    }
    return Pose{x, wrap_angle(psi)};
}

Mat3 rotation_z(double psi)
{
    if (!std::isfinite(psi)) {
        throw InvalidArgument("rotation_z: heading must be finite");
    }
    const double c = std::cos(psi);
    const double s = std::sin(psi);
    Mat3 q;
    q << c, -s, 0.0,
         s,  c, 0.0,
         0.0, 0.0, 1.0;
    return q;
}

AnglePair cart_to_angles(const Vec3& v)
{
    const double r = v.norm();
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DegenerateGeometry("cart_to_angles: direction vector must be nonzero and finite");
    }
    const double rho = std::hypot(v.x(), v.y());
    // atan2 of the full vector keeps phi accurate near the poles, where acos loses digits.
    const double phi = std::atan2(rho, v.z());
    const double theta = rho > 0.0 ? std::atan2(v.y(), v.x()) : 0.0;
    return AnglePair{wrap_angle(theta), phi};
}

Vec3 unit_vector(const AnglePair& xi)
{
    const double sp = std::sin(xi.phi);
    return Vec3(sp * std::cos(xi.theta), sp * std::sin(xi.theta), std::cos(xi.phi));
}

AnglePair ems_incidence_angles(const Pose& pose, const Vec3& terminal_center)
{
    const Vec3 rel = pose.x - terminal_center;
    if (!(rel.norm() > 0.0)) {
        throw DegenerateGeometry("ems_incidence_angles: EMS coincides with the terminal");
    }
    return cart_to_angles(-(rotation_z(pose.psi).transpose() * rel));
}

AnglePair terminal_pointing_angles(const Vec3& x)
{
    return cart_to_angles(x);
}

Vec3 element_position(const Pose& pose, int n, int m, double d)
{
    return pose.x + rotation_z(pose.psi) * Vec3(n * d, m * d, 0.0);
}

ExactDelays exact_delays(const Vec3& tx, const Vec3& rx, const Vec3& x_nm)
{
    const double di = (x_nm - tx).norm();
    const double d_o = (rx - x_nm).norm();
    if (!(di > 0.0) || !(d_o > 0.0)) {
        throw DegenerateGeometry("exact_delays: element coincides with an antenna");
    }
    return ExactDelays{di / kSpeedOfLight, d_o / kSpeedOfLight};
}

double ems_excess_delay(const AnglePair& xi, int n, int m, double d)
{
    const double sp = std::sin(xi.phi);
    return -(d / kSpeedOfLight) * (n * sp * std::cos(xi.theta) + m * sp * std::sin(xi.theta));
}

namespace {

double max_distance_from_origin(std::span<const Vec3> pts)
{
    double r = 0.0;
    for (const auto& p : pts) {
        r = std::max(r, p.norm());
    }
    return r;
}

} // namespace

DelayDecomposition linearized_delays(const Pose& pose, int n_x, int n_y, double d,
                                     std::span<const Vec3> tx, std::span<const Vec3> rx)
{
    if (n_x < 2 || n_y < 2 || n_x % 2 != 0 || n_y % 2 != 0) {
        throw InvalidArgument("linearized_delays: element counts must be even and >= 2");
    }
    const double range = pose.x.norm();
    if (!(range > 0.0)) {
        throw DegenerateGeometry("linearized_delays: zero range");
    }

    DelayDecomposition out;
    out.tau0 = range / kSpeedOfLight;

    // Terminal side: the path shortens by the projection of the antenna offset on
    // the pointing direction.
    const Vec3 u_zeta = pose.x / range;
    out.dtau_i.reserve(tx.size());
    out.dtau_o.reserve(rx.size());
    for (const auto& s : tx) {
        out.dtau_i.push_back(-s.dot(u_zeta) / kSpeedOfLight);
    }
    for (const auto& r : rx) {
        out.dtau_o.push_back(-r.dot(u_zeta) / kSpeedOfLight);
    }

    const AnglePair xi = ems_incidence_angles(pose);
    out.dtau_nm.resize(n_x, n_y);
    for (int i = 0; i < n_x; ++i) {
        for (int j = 0; j < n_y; ++j) {
            out.dtau_nm(i, j) = ems_excess_delay(xi, i - n_x / 2, j - n_y / 2, d);
        }
    }

    const double panel_aperture = std::hypot(n_x * d, n_y * d);
    const double terminal_aperture = 2.0 * std::max(max_distance_from_origin(tx),
                                                    max_distance_from_origin(rx));
    out.aperture_to_range = std::max(panel_aperture, terminal_aperture) / range;
    if (out.aperture_to_range > kFarFieldWarningRatio) {
        std::ostringstream msg;
        msg << "far-field approximation questionable: aperture/range = " << out.aperture_to_range;
        out.warnings.push_back(msg.str());
    }
    return out;
}

} // namespace emslb
