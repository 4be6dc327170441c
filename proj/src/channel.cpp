#include "emslb/channel.hpp"

#include "emslb/errors.hpp"

#include <cmath>

namespace emslb {

Eigen::Matrix<double, 5, 1> ParamVector::as_vector() const
{
    Eigen::Matrix<double, 5, 1> v;
    v << x, xi_bar.theta, xi_bar.phi;
    return v;
}

ParamVector ParamVector::from_vector(const Eigen::Matrix<double, 5, 1>& v)
{
    return ParamVector{v.head<3>(), AnglePair{v(3), v(4)}};
}

ParamVector params_of(const Scenario& s)
{
    return ParamVector{s.pose.x, s.panel.config};
}

const char* band_name(Band b)
{
    return b == Band::Wideband ? "wideband" : "narrowband";
}

namespace {

// c / (f0 (4 pi)^{3/2} |x|^2): amplitude radar-equation factor without the RCS.
double range_factor(double f0, double range)
{
    return kSpeedOfLight / (f0 * std::pow(4.0 * kPi, 1.5) * range * range);
}

} // namespace

std::complex<double> beta(double f, const Pose& pose, const RisPanel& panel, double gamma,
                          const AnglePair& xi, const AnglePair& xi_bar)
{
    const double range = pose.x.norm();
    if (!(range > 0.0)) {
        throw DegenerateGeometry("beta: zero range");
    }
    const double g = rcs(panel, f, xi, xi_bar);
    return std::polar(range_factor(panel.f0, range) * std::sqrt(g), gamma);
}

AmplitudeGradient amplitude_gradient(double f, const Scenario& s, const ParamVector& p, Band band)
{
    const double range = p.x.norm();
    if (!(range > 0.0)) {
        throw DegenerateGeometry("amplitude_gradient: zero range");
    }
    const Vec3 xhat = p.x / range;
    const double kr = range_factor(s.panel.f0, range);

    AmplitudeGradient out;
    if (s.point_rcs) {
        out.b = kr * std::sqrt(*s.point_rcs);
        out.grad.head<3>() = -2.0 * out.b * xhat / range;
        return out;
    }

    const double fe = band == Band::Narrowband ? 0.0 : f;
    const double fa = s.panel.f0 + fe;
    const Mat3 qt = rotation_z(s.pose.psi).transpose();
    const Vec3 u = -(qt * xhat); // incidence direction, local frame
    const double rho = std::hypot(u.x(), u.y());
    const double sb = std::sin(p.xi_bar.phi);
    if (rho < 1e-9 || std::abs(sb) < 1e-9) {
        throw PoleSingularity("amplitude_gradient: elevation at the panel normal");
    }
    const double cb = std::cos(p.xi_bar.phi);
    const double ct = std::cos(p.xi_bar.theta);
    const double st = std::sin(p.xi_bar.theta);

    const double k = 2.0 * kPi * s.panel.d / kSpeedOfLight;
    const double ax = k * (s.panel.f0 * sb * ct - fa * u.x());
    const double ay = k * (s.panel.f0 * sb * st - fa * u.y());
    const double gx = dirichlet(s.panel.n_x, ax);
    const double gy = dirichlet(s.panel.n_y, ay);
    const double sign = gx * gy < 0.0 ? -1.0 : 1.0;
    const double amp = std::abs(gx * gy);
    const double dA_dax = sign * dirichlet_derivative(s.panel.n_x, ax) * gy;
    const double dA_day = sign * gx * dirichlet_derivative(s.panel.n_y, ay);

    const double root_peak = std::sqrt(peak_rcs(s.panel.area(), fa));
    const double scale = kr * root_peak;
    out.b = scale * amp;

    // du/dx = -Q^T (I - xhat xhat^T) / |x|
    const Mat3 du_dx = -qt * (Mat3::Identity() - xhat * xhat.transpose()) / range;
    const Vec3 dax_dx = -k * fa * du_dx.row(0).transpose();
    const Vec3 day_dx = -k * fa * du_dx.row(1).transpose();
    out.grad.head<3>() = -2.0 * out.b * xhat / range + scale * (dA_dax * dax_dx + dA_day * day_dx);

    const double k0 = k * s.panel.f0;
    const double dax_dt = -k0 * sb * st;
    const double dax_dp = k0 * cb * ct;
    const double day_dt = k0 * sb * ct;
    const double day_dp = k0 * cb * st;
    out.grad(3) = scale * (dA_dax * dax_dt + dA_day * day_dt);
    out.grad(4) = scale * (dA_dax * dax_dp + dA_day * day_dp);
    return out;
}

double channel_delay(const SensingTerminal& t, std::size_t l, const Vec3& x)
{
    const double range = x.norm();
    const Vec3 xhat = x / range;
    return (2.0 * range - (t.tx_of(l) + t.rx_of(l)).dot(xhat)) / kSpeedOfLight;
}

Vec3 channel_delay_gradient(const SensingTerminal& t, std::size_t l, const Vec3& x)
{
    const double range = x.norm();
    const Vec3 xhat = x / range;
    const Vec3 sr = t.tx_of(l) + t.rx_of(l);
    return (2.0 * xhat - (sr - xhat * xhat.dot(sr)) / range) / kSpeedOfLight;
}

std::complex<double> model_mean(double f, std::size_t l, const Scenario& s, const ParamVector& p,
                                Band band)
{
    const double spec = s.waveform().spectrum(f);
    if (spec == 0.0) {
        return {0.0, 0.0};
    }
    const double range = p.x.norm();
    if (!(range > 0.0)) {
        throw DegenerateGeometry("model_mean: zero range");
    }
    double b = 0.0;
    if (s.point_rcs) {
        b = range_factor(s.panel.f0, range) * std::sqrt(*s.point_rcs);
    } else {
        const Pose pose{p.x, s.pose.psi};
        const AnglePair xi = ems_incidence_angles(pose);
        const double fe = band == Band::Narrowband ? 0.0 : f;
        b = std::abs(beta(fe, pose, s.panel, 0.0, xi, p.xi_bar));
    }
    const double phase = s.gamma - 2.0 * kPi * (s.panel.f0 + f) * channel_delay(s.terminal, l, p.x);
    return std::polar(spec * b, phase);
}

std::complex<double> received_spectrum(double f, std::size_t l, const Scenario& s)
{
    return model_mean(f, l, s, params_of(s), Band::Wideband);
}

std::complex<double> narrowband_received(double f, std::size_t l, const Scenario& s)
{
    return model_mean(f, l, s, params_of(s), Band::Narrowband);
}

std::vector<double> channel_snr_db(const Scenario& s, int points)
{
    if (points < 2) {
        throw InvalidArgument("channel_snr_db: need at least two quadrature points");
    }
    const double bw = s.terminal.bandwidth;
    const double h = bw / (points - 1);
    std::vector<double> out(s.terminal.channels());
    for (std::size_t l = 0; l < out.size(); ++l) {
        double acc = 0.0;
        for (int i = 0; i < points; ++i) {
            const double f = -0.5 * bw + i * h;
            const double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
            acc += w * std::norm(received_spectrum(f, l, s));
        }
        out[l] = 10.0 * std::log10(acc * h / s.terminal.n0());
    }
    return out;
}

DelayDecomposition linearized_delays(const Scenario& s)
{
    return linearized_delays(s.pose, s.panel.n_x, s.panel.n_y, s.panel.d, s.terminal.tx,
                             s.terminal.rx);
}

} // namespace emslb
