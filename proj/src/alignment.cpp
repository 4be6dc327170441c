#include "emslb/alignment.hpp"

#include "emslb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace emslb {

Eigen::Matrix<double, 2, 3> incidence_jacobian(const Pose& pose)
{
    const Mat3 qt = rotation_z(pose.psi).transpose();
    const Vec3 v = -(qt * pose.x);
    const double r2 = v.squaredNorm();
    if (!(r2 > 0.0)) {
        throw DegenerateGeometry("incidence_jacobian: zero range");
    }
    const double rho2 = v.x() * v.x() + v.y() * v.y();
    const double rho = std::sqrt(rho2);
    if (rho < 1e-9 * std::sqrt(r2)) {
        throw PoleSingularity("incidence_jacobian: azimuth undefined on the panel normal");
    }
    Eigen::Matrix<double, 2, 3> dv;
    dv << -v.y() / rho2, v.x() / rho2, 0.0,
          v.z() * v.x() / (rho * r2), v.z() * v.y() / (rho * r2), -rho / r2;
    return dv * (-qt);
}

Eigen::Matrix2d angle_error_covariance(const Pose& pose, const PositionPrior& prior)
{
    if (!(prior.sigma >= 0.0)) {
        throw InvalidArgument("angle_error_covariance: sigma must be nonnegative");
    }
    if (prior.sigma == 0.0) {
        return Eigen::Matrix2d::Zero();
    }
    const auto j = incidence_jacobian(pose);
    return prior.sigma * prior.sigma * (j * j.transpose());
}

int codebook_count(double kappa_sigma, double beamwidth)
{
    const long k = std::max(0L, std::lround(2.0 * kappa_sigma / beamwidth));
    return static_cast<int>(k + (k % 2));
}

Codebook build_codebook(const AnglePair& xi_hat, const Eigen::Matrix2d& c_xi,
                        const Beamwidths& beamwidths, double kappa, bool scaled_step)
{
    if (!(kappa >= 1.0)) {
        throw InvalidArgument("build_codebook: kappa must be >= 1");
    }
    if (!(beamwidths.theta > 0.0) || !(beamwidths.phi > 0.0)) {
        throw InvalidArgument("build_codebook: beamwidths must be positive");
    }
    const double ks_theta = kappa * std::sqrt(std::max(0.0, c_xi(0, 0)));
    const double ks_phi = kappa * std::sqrt(std::max(0.0, c_xi(1, 1)));

    Codebook cb;
    cb.kappa = kappa;
    cb.center = xi_hat;
    cb.k_count = codebook_count(ks_theta, beamwidths.theta);
    cb.q_count = codebook_count(ks_phi, beamwidths.phi);
    cb.step_theta = (scaled_step && ks_theta >= 1.0) ? beamwidths.theta / ks_theta : beamwidths.theta;
    cb.step_phi = (scaled_step && ks_phi >= 1.0) ? beamwidths.phi / ks_phi : beamwidths.phi;

    cb.entries.reserve(static_cast<std::size_t>(cb.k_count + 1) * (cb.q_count + 1));
    for (int q = 0; q <= cb.q_count; ++q) {
        const double phi = std::clamp(xi_hat.phi + (q - cb.q_count / 2) * cb.step_phi, 0.0, kPi);
        for (int k = 0; k <= cb.k_count; ++k) {
            const double theta = wrap_angle(xi_hat.theta + (k - cb.k_count / 2) * cb.step_theta);
            cb.entries.push_back(AnglePair{theta, phi});
        }
    }
    return cb;
}

SweepResult sweep(const Codebook& codebook, const RisPanel& panel, const AnglePair& true_xi)
{
    if (codebook.entries.empty()) {
        throw InvalidArgument("sweep: empty codebook");
    }
    SweepResult out;
    out.rcs_trace.reserve(codebook.entries.size());
    double best_dist = 0.0;
    for (std::size_t i = 0; i < codebook.entries.size(); ++i) {
        const AnglePair& e = codebook.entries[i];
        const double v = rcs(panel, 0.0, true_xi, e);
        out.rcs_trace.push_back(v);
        const double dist = angular_separation(e, codebook.center);
        if (i == 0 || v > out.rcs || (v == out.rcs && dist < best_dist)) {
            out.rcs = v;
            out.index = i;
            out.xi_opt = e;
            best_dist = dist;
        }
    }
    return out;
}

MobilityBudget training_budget(double v, double t_pri, double d_min, double phi_min,
                               const Beamwidths& beamwidths)
{
    if (!(v > 0.0) || !(t_pri > 0.0) || !(d_min > 0.0) || !(beamwidths.theta > 0.0) ||
        !(beamwidths.phi > 0.0) || !(phi_min >= 0.0) || !(phi_min < kPi / 2)) {
        throw InvalidArgument("training_budget: inputs must be positive, phi_min in [0, pi/2)");
    }
    MobilityBudget out{v, t_pri, d_min, phi_min, 0.0, 0.0};
    const double vt = v * t_pri;
    out.kq_max = std::min(beamwidths.theta * d_min / vt,
                          beamwidths.phi * d_min / (vt * std::cos(phi_min)));
    out.t_train_max = t_pri * out.kq_max;
    return out;
}

RcsStatistics average_rcs_under_error(const Scenario& s, const PositionPrior& prior,
                                      std::size_t n_samples, std::uint64_t seed, Execution exec)
{
    if (n_samples == 0) {
        throw InvalidArgument("average_rcs_under_error: need at least one sample");
    }
    if (!(prior.sigma >= 0.0)) {
        throw InvalidArgument("average_rcs_under_error: sigma must be nonnegative");
    }
    const std::vector<double> v = rcs_under_error_samples(s, prior.sigma, n_samples, seed, exec);
    RcsStatistics out;
    out.samples = n_samples;
    out.peak = rcs(s.panel, 0.0, s.incidence(), s.incidence());
    // Shifted by the first sample: exact for constant samples, and less cancellation.
    double sum = 0.0;
    for (double x : v) {
        sum += x - v.front();
    }
    out.mean = v.front() + sum / static_cast<double>(n_samples);
    if (n_samples > 1) {
        double ss = 0.0;
        for (double x : v) {
            ss += (x - out.mean) * (x - out.mean);
        }
        out.stddev = std::sqrt(ss / static_cast<double>(n_samples - 1));
    }
    return out;
}

AlignmentStudy alignment_study(const Scenario& s, double sigma, double kappa, std::size_t trials,
                               std::uint64_t seed, bool scaled_step, Execution exec)
{
    if (trials == 0) {
        throw InvalidArgument("alignment_study: need at least one trial");
    }
    const AnglePair xi = s.incidence();
    const double peak = rcs(s.panel, 0.0, xi, xi);
    AlignmentStudy out;
    out.trials.resize(trials);
    parallel_for(trials, [&](std::size_t i) {
        const Vec3 x_hat = s.pose.x + sigma * standard_normal3(sample_seed(seed, i));
        const Pose pose_hat{x_hat, s.pose.psi};
        const AnglePair xi_hat = ems_incidence_angles(pose_hat);
        const Eigen::Matrix2d c_xi = angle_error_covariance(pose_hat, PositionPrior{x_hat, sigma});
        const Beamwidths bw = beamwidths(s.panel, xi_hat);
        const Codebook cb = build_codebook(xi_hat, c_xi, bw, kappa, scaled_step);
        const SweepResult sw = sweep(cb, s.panel, xi);
        out.trials[i] = AlignmentTrial{rcs(s.panel, 0.0, xi, xi_hat), sw.rcs, peak, cb.entries.size()};
    }, exec);

    std::size_t within = 0;
    double min_gain = 0.0;
    double size_sum = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto& t = out.trials[i];
        if (10.0 * std::log10(t.post_rcs / t.peak_rcs) >= -3.0) {
            ++within;
        }
        const double gain = 10.0 * std::log10(t.post_rcs / t.pre_rcs);
        min_gain = (i == 0) ? gain : std::min(min_gain, gain);
        size_sum += static_cast<double>(t.codebook_size);
    }
    out.fraction_within_3db = static_cast<double>(within) / static_cast<double>(trials);
    out.min_gain_db = min_gain;
    out.mean_codebook_size = size_sum / static_cast<double>(trials);
    return out;
}

void write_codebook(std::ostream& os, const Codebook& codebook)
{
    os << "# codebook K=" << codebook.k_count << " Q=" << codebook.q_count
       << " kappa=" << codebook.kappa << '\n';
    os << "# theta_rad,phi_rad\n";
    char buf[64];
    for (const auto& e : codebook.entries) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", e.theta, e.phi);
        os << buf;
    }
}

std::vector<AnglePair> read_codebook(std::istream& is)
{
    std::vector<AnglePair> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::istringstream row(line);
        AnglePair e;
        char comma = 0;
        if (!(row >> e.theta >> comma >> e.phi) || comma != ',' || !(row >> std::ws).eof()) {
            throw ValidationError("codebook line " + std::to_string(lineno) + ": expected 'theta,phi'");
        }
        if (!(e.phi >= 0.0 && e.phi <= kPi) || !(e.theta > -kPi - 1e-12 && e.theta <= kPi + 1e-12)) {
            throw ValidationError("codebook line " + std::to_string(lineno) + ": angle out of range");
        }
        out.push_back(e);
    }
    return out;
}

} // namespace emslb
