#include "emslb/reflector.hpp"

#include "emslb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace emslb {

RisPanel make_panel(int n_x, int n_y, double d, double f0, AnglePair config)
{
    if (n_x < 2 || n_y < 2 || n_x % 2 != 0 || n_y % 2 != 0) {
        throw InvalidArgument("panel: element counts must be even and >= 2");
    }
    if (!(d > 0.0) || !(f0 > 0.0) || !std::isfinite(d) || !std::isfinite(f0)) {
        throw InvalidArgument("panel: spacing and carrier must be positive");
    }
    return RisPanel{n_x, n_y, d, f0, config};
}

RisPanel square_panel(int n, double f0, double spacing_over_lambda, AnglePair config)
{
    return make_panel(n, n, spacing_over_lambda * kSpeedOfLight / f0, f0, config);
}

int even_count_for_side(double side_m, double d)
{
    const double n = side_m / d;
    const int lo = std::max(2, 2 * static_cast<int>(std::floor(n / 2.0)));
    const int hi = lo + 2;
    return (std::abs(hi - n) < std::abs(n - lo)) ? hi : lo;
}

Eigen::MatrixXd phase_profile(const RisPanel& panel, const AnglePair& xi_bar)
{
    const double k = 4.0 * kPi * panel.f0 * panel.d / kSpeedOfLight;
    const double sp = std::sin(xi_bar.phi);
    const double ux = sp * std::cos(xi_bar.theta);
    const double uy = sp * std::sin(xi_bar.theta);
    Eigen::MatrixXd phase(panel.n_x, panel.n_y);
    for (int i = 0; i < panel.n_x; ++i) {
        for (int j = 0; j < panel.n_y; ++j) {
            const int n = i - panel.n_x / 2;
            const int m = j - panel.n_y / 2;
            phase(i, j) = k * (n * ux + m * uy);
        }
    }
    return phase;
}

namespace {

// Splits a = k pi + r with |r| <= pi/2 and returns the sign (-1)^(k (n - 1)) relating
// dirichlet(n, a) to dirichlet(n, r).
double reduce(int n, double a, double& r)
{
    const double k = std::nearbyint(a / kPi);
    r = a - k * kPi;
    const long long parity = static_cast<long long>(k) * (n - 1);
    return (parity % 2 == 0) ? 1.0 : -1.0;
}

// Series switch-over: below this |n r| the closed forms lose digits to cancellation.
constexpr double kSeriesThreshold = 1e-3;

} // namespace

double dirichlet(int n, double a)
{
    double r = 0.0;
    const double sign = reduce(n, a, r);
    const double nn = static_cast<double>(n) * n;
    if (std::abs(n * r) < kSeriesThreshold) {
        const double r2 = r * r;
        return sign * (1.0 - (nn - 1.0) * r2 / 6.0 + (nn - 1.0) * (3.0 * nn - 7.0) * r2 * r2 / 360.0);
    }
    return sign * std::sin(n * r) / (n * std::sin(r));
}

double dirichlet_derivative(int n, double a)
{
    double r = 0.0;
    const double sign = reduce(n, a, r);
    const double nn = static_cast<double>(n) * n;
    if (std::abs(n * r) < kSeriesThreshold) {
        return sign * (-(nn - 1.0) * r / 3.0 + (nn - 1.0) * (3.0 * nn - 7.0) * r * r * r / 90.0);
    }
    const double s = std::sin(r);
    return sign * (n * std::cos(n * r) * s - std::sin(n * r) * std::cos(r)) / (n * s * s);
}

SquintArguments squint_arguments(const RisPanel& panel, double f, const AnglePair& xi,
                                 const AnglePair& xi_bar)
{
    const double k = 2.0 * kPi * panel.d / kSpeedOfLight;
    const double sp = std::sin(xi.phi);
    const double spb = std::sin(xi_bar.phi);
    const double fa = panel.f0 + f;
    return SquintArguments{
        k * (panel.f0 * spb * std::cos(xi_bar.theta) - fa * sp * std::cos(xi.theta)),
        k * (panel.f0 * spb * std::sin(xi_bar.theta) - fa * sp * std::sin(xi.theta)),
    };
}

double array_factor(const RisPanel& panel, double f, const AnglePair& xi, const AnglePair& xi_bar)
{
    const auto [ax, ay] = squint_arguments(panel, f, xi, xi_bar);
    const double g = dirichlet(panel.n_x, ax) * dirichlet(panel.n_y, ay);
    return std::min(1.0, g * g);
}

double array_factor_bruteforce(const RisPanel& panel, double f, const AnglePair& xi,
                               const AnglePair& xi_bar)
{
    // Physical excess delays with the profile applied as a phase lag; the modulus is the
    // same as with the opposite sign convention on both terms.
    const Eigen::MatrixXd phase = phase_profile(panel, xi_bar);
    const double w = 4.0 * kPi * (panel.f0 + f);
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i < panel.n_x; ++i) {
        for (int j = 0; j < panel.n_y; ++j) {
            const double tau = ems_excess_delay(xi, i - panel.n_x / 2, j - panel.n_y / 2, panel.d);
            acc += std::polar(1.0, -(w * tau + phase(i, j)));
        }
    }
    const double nm = static_cast<double>(panel.n_x) * panel.n_y;
    return std::norm(acc) / (nm * nm);
}

double peak_rcs(double area, double f)
{
    if (!(area > 0.0) || !(f > 0.0)) {
        throw InvalidArgument("peak_rcs: area and frequency must be positive");
    }
    return 4.0 * kPi * f * f * area * area / (kSpeedOfLight * kSpeedOfLight);
}

double corner_rcs(double f0, double a)
{
    if (!(a > 0.0) || !(f0 > 0.0)) {
        throw InvalidArgument("corner_rcs: side and frequency must be positive");
    }
    const double a2 = a * a;
    return 12.0 * kPi * f0 * f0 * a2 * a2 / (kSpeedOfLight * kSpeedOfLight);
}

PanelSize size_for_detectability(double a_corner, double deficit_db)
{
    if (!(a_corner > 0.0) || !std::isfinite(deficit_db)) {
        throw InvalidArgument("size_for_detectability: corner side must be positive");
    }
    const double ratio = std::pow(10.0, deficit_db / 10.0);
    const double area = a_corner * a_corner * std::sqrt(3.0 / ratio);
    return PanelSize{area, std::sqrt(area)};
}

double rcs(const RisPanel& panel, double f, const AnglePair& xi, const AnglePair& xi_bar)
{
    return peak_rcs(panel.area(), panel.f0 + f) * array_factor(panel, f, xi, xi_bar);
}

double half_power_width_u(const RisPanel& panel)
{
    const int n = std::min(panel.n_x, panel.n_y);
    // Main lobe of dirichlet(n, .) is monotone on [0, pi/n].
    double lo = 0.0;
    double hi = kPi / n;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double g = dirichlet(n, mid);
        (g * g > 0.5 ? lo : hi) = mid;
    }
    const double k = 2.0 * kPi * panel.d * panel.f0 / kSpeedOfLight;
    return 2.0 * 0.5 * (lo + hi) / k;
}

namespace {

// Distance t > 0 along a one-parameter cut where the gain first drops to one half.
// Returns false if it does not happen before t_max.
template <typename Gain>
bool half_power_crossing(const Gain& gain, double step, double t_max, double& t_half)
{
    double t_in = 0.0;
    double t = step;
    while (gain(t) >= 0.5) {
        t_in = t;
        t += step;
        if (t > t_max) {
            return false;
        }
    }
    double lo = t_in;
    double hi = t;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gain(mid) >= 0.5 ? lo : hi) = mid;
    }
    t_half = 0.5 * (lo + hi);
    return true;
}

} // namespace

Beamwidths beamwidths(const RisPanel& panel, const AnglePair& xi)
{
    const double step = 0.05 * 0.5 * half_power_width_u(panel);
    Beamwidths out;

    auto elevation_cut = [&](double theta, double sign) {
        return [&panel, xi, theta, sign](double t) {
            return array_factor(panel, 0.0, AnglePair{theta, xi.phi + sign * t}, xi);
        };
    };

    const bool at_pole = std::abs(std::sin(xi.phi)) < 1e-6;
    double up = 0.0;
    double down = 0.0;
    bool ok = half_power_crossing(elevation_cut(xi.theta, +1.0), step, kPi / 2, up);
    ok = half_power_crossing(elevation_cut(xi.theta, -1.0), step, kPi / 2, down) && ok;
    out.phi = ok ? up + down : kPi;
    out.saturated = !ok;

    double left = 0.0;
    double right = 0.0;
    if (at_pole) {
        const double ortho = xi.theta + kPi / 2;
        ok = half_power_crossing(elevation_cut(ortho, +1.0), step, kPi / 2, right);
        ok = half_power_crossing(elevation_cut(ortho, -1.0), step, kPi / 2, left) && ok;
    } else {
        auto azimuth_cut = [&](double sign) {
            return [&panel, xi, sign](double t) {
                return array_factor(panel, 0.0, AnglePair{xi.theta + sign * t, xi.phi}, xi);
            };
        };
        ok = half_power_crossing(azimuth_cut(+1.0), step, kPi, right);
        ok = half_power_crossing(azimuth_cut(-1.0), step, kPi, left) && ok;
    }
    out.theta = ok ? left + right : 2.0 * kPi;
    out.saturated = out.saturated || !ok;
    return out;
}

double angular_separation(const AnglePair& a, const AnglePair& b)
{
    const Vec3 ua = unit_vector(a);
    const Vec3 ub = unit_vector(b);
    return std::atan2(ua.cross(ub).norm(), ua.dot(ub));
}

SpemsReflector make_spems(const RisPanel& module, std::vector<AnglePair> directions,
                          std::vector<Vec3> offsets)
{
    if (directions.empty()) {
        throw InvalidArgument("make_spems: at least one module direction is required");
    }
    if (offsets.empty()) {
        offsets.assign(directions.size(), Vec3::Zero());
    } else if (offsets.size() != directions.size()) {
        throw InvalidArgument("make_spems: one offset per module direction expected");
    }
    SpemsReflector out{module, std::move(directions), std::move(offsets), {}};

    // Angular width of the lobe on the sphere ~ width in direction cosines.
    const double min_sep = 0.5 * half_power_width_u(module);
    for (std::size_t p = 0; p < out.directions.size(); ++p) {
        for (std::size_t q = p + 1; q < out.directions.size(); ++q) {
            const double sep = angular_separation(out.directions[p], out.directions[q]);
            if (sep < min_sep) {
                std::ostringstream msg;
                msg << "modules " << p << " and " << q << " are " << sep
                    << " rad apart, below half the module beamwidth (" << min_sep << " rad)";
                out.warnings.push_back(msg.str());
            }
        }
    }
    return out;
}

double spems_composite_rcs(const SpemsReflector& reflector, double f, const AnglePair& xi,
                           std::size_t* best_module)
{
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t p = 0; p < reflector.directions.size(); ++p) {
        const double v = rcs(reflector.module, f, xi, reflector.directions[p]);
        if (v > best) {
            best = v;
            arg = p;
        }
    }
    if (best_module != nullptr) {
        *best_module = arg;
    }
    return best;
}

std::vector<AnglePair> spems_module_grid(const Beamwidths& module_beamwidths,
                                         double elevation_span, double phi_start)
{
    if (!(module_beamwidths.theta > 0.0) || !(module_beamwidths.phi > 0.0) ||
        !(elevation_span > 0.0)) {
        throw InvalidArgument("spems_module_grid: beamwidths and span must be positive");
    }
    // The slack keeps exact ratios such as 2 pi / 10 deg from rounding up.
    constexpr double slack = 1e-9;
    const auto n_theta = static_cast<int>(std::ceil(2.0 * kPi / module_beamwidths.theta - slack));
    const auto n_phi = static_cast<int>(std::ceil(elevation_span / module_beamwidths.phi - slack));
    const double dtheta = 2.0 * kPi / n_theta;
    const double dphi = elevation_span / n_phi;

    std::vector<AnglePair> grid;
    grid.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    for (int j = 0; j < n_phi; ++j) {
        for (int i = 0; i < n_theta; ++i) {
            grid.push_back(AnglePair{wrap_angle(-kPi + (i + 0.5) * dtheta),
                                     phi_start + (j + 0.5) * dphi});
        }
    }
    return grid;
}

} // namespace emslb
