#include "emslb/bounds.hpp"

#include "emslb/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace emslb {

ModelDerivatives model_derivatives(double f, std::size_t l, const Scenario& s, const ParamVector& p,
                                   Band band)
{
    ModelDerivatives out;
    out.grad.setZero();
    const double spec = s.waveform().spectrum(f);
    if (spec == 0.0) {
        return out;
    }
    const AmplitudeGradient a = amplitude_gradient(f, s, p, band);
    const double k = 2.0 * kPi * (s.panel.f0 + f);
    const std::complex<double> carrier =
        std::polar(spec, s.gamma - k * channel_delay(s.terminal, l, p.x));
    Eigen::Matrix<double, 5, 1> t = Eigen::Matrix<double, 5, 1>::Zero();
    t.head<3>() = channel_delay_gradient(s.terminal, l, p.x);

    const std::complex<double> j{0.0, 1.0};
    out.a = carrier * a.b;
    for (int i = 0; i < kParamDim; ++i) {
        out.grad(i) = carrier * (a.grad(i) - j * k * a.b * t(i));
    }
    return out;
}

bool InfoMatrix::is_symmetric(double rel_tol) const
{
    const double scale = std::max(data.cwiseAbs().maxCoeff(), 1e-300);
    return (data - data.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

bool InfoMatrix::is_psd(double tol) const
{
    const Mat5 sym = 0.5 * (data + data.transpose());
    Eigen::SelfAdjointEigenSolver<Mat5> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol * std::abs(sym.trace());
}

namespace {

double richardson_error(const TrapezoidResult& r)
{
    const Mat5& fine = r.fine;
    const double floor = 1e-12 * fine.diagonal().cwiseAbs().maxCoeff();
    double worst = 0.0;
    for (int i = 0; i < kParamDim; ++i) {
        for (int k = 0; k < kParamDim; ++k) {
            const double scale = std::max(std::sqrt(std::abs(fine(i, i) * fine(k, k))), floor);
            if (scale > 0.0) {
                worst = std::max(worst, std::abs(fine(i, k) - r.coarse(i, k)) / 3.0 / scale);
            }
        }
    }
    return worst;
}

} // namespace

InfoMatrix fim(const Scenario& s, const ParamVector& p, Band band, Execution exec)
{
    validate_scenario(s);
    const FimIntegrand g(s, p, band);
    const Waveform w = s.waveform();
    const double n0 = s.terminal.n0();
    InfoMatrix out;

    if (s.quadrature.carrier_only) {
        out.data = (2.0 / n0) * w.energy * g(0.0);
        out.quadrature = QuadratureReport{1, 0.0};
        out.data = 0.5 * (out.data + out.data.transpose());
        return out;
    }

    const double half = 0.5 * w.bandwidth;
    int points = s.quadrature.points;
    while (true) {
        const TrapezoidResult r = trapezoid_fim(g, -half, half, points, exec);
        const double err = richardson_error(r);
        if (err < s.quadrature.tolerance) {
            out.data = (2.0 / n0) * w.psd() * r.fine;
            out.data = 0.5 * (out.data + out.data.transpose());
            out.quadrature = QuadratureReport{points, err};
            return out;
        }
        const int next = 2 * (points - 1) + 1;
        if (next > s.quadrature.max_points) {
            std::ostringstream msg;
            msg << "fim: quadrature did not converge; relative error " << err << " at " << points
                << " points exceeds " << s.quadrature.tolerance << " (max_points "
                << s.quadrature.max_points << ")";
            throw NumericalAccuracyError(msg.str());
        }
        points = next;
    }
}

Mat5 fim_reference(const Scenario& s, const ParamVector& p, Band band, int points)
{
    if (points < 2) {
        throw InvalidArgument("fim_reference: need at least two points");
    }
    const double bw = s.terminal.bandwidth;
    const double h = bw / (points - 1);
    Mat5 acc = Mat5::Zero();
    for (int i = 0; i < points; ++i) {
        const double f = (i == points - 1) ? 0.5 * bw : -0.5 * bw + i * h;
        const double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
        for (std::size_t l = 0; l < s.terminal.channels(); ++l) {
            const auto d = model_derivatives(f, l, s, p, band);
            acc += w * (d.grad.conjugate() * d.grad.transpose()).real();
        }
    }
    return (2.0 / s.terminal.n0()) * h * acc;
}

namespace {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Golub-Welsch for the probabilists' normal weight: nodes z_i, weights summing to 1.
GaussRule gauss_hermite_normal(int order)
{
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        jac(k, k - 1) = jac(k - 1, k) = std::sqrt(0.5 * k);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    GaussRule rule;
    for (int i = 0; i < order; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        rule.nodes.push_back(std::sqrt(2.0) * es.eigenvalues()(i));
        rule.weights.push_back(v0 * v0);
    }
    return rule;
}

} // namespace

HybridInfo hybrid_im(const Scenario& s, const PositionPrior& prior, Band band,
                     std::size_t mc_samples, std::uint64_t seed, Expectation method, Execution exec)
{
    validate_scenario(s);
    HybridInfo out;
    out.c_xi = angle_error_covariance(s.pose, prior);
    Eigen::LLT<Eigen::Matrix2d> llt(out.c_xi);
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(out.c_xi).eigenvalues()(0);
    if (llt.info() != Eigen::Success || !(min_eig > 0.0)) {
        throw UnidentifiableParameters(
            "hybrid_im: angle covariance is singular; use the perfect-configuration bound", 0.0);
    }
    const Eigen::Matrix2d chol = llt.matrixL();
    const AnglePair xi = s.incidence();

    std::vector<Eigen::Vector2d> z;
    std::vector<double> w;
    if (method == Expectation::MonteCarlo) {
        if (mc_samples == 0) {
            throw InvalidArgument("hybrid_im: need at least one sample");
        }
        for (std::size_t i = 0; i < mc_samples; ++i) {
            const Vec3 n = standard_normal3(sample_seed(seed, i));
            z.emplace_back(n(0), n(1));
            w.push_back(1.0 / static_cast<double>(mc_samples));
        }
    } else {
        const GaussRule r = gauss_hermite_normal(kGaussHermiteOrder);
        for (int a = 0; a < kGaussHermiteOrder; ++a) {
            for (int b = 0; b < kGaussHermiteOrder; ++b) {
                z.emplace_back(r.nodes[a], r.nodes[b]);
                w.push_back(r.weights[a] * r.weights[b]);
            }
        }
    }

    std::vector<Mat5> terms(z.size());
    parallel_for(z.size(), [&](std::size_t i) {
        const Eigen::Vector2d d = chol * z[i];
        const ParamVector p{s.pose.x, AnglePair{wrap_angle(xi.theta + d(0)), xi.phi + d(1)}};
        terms[i] = fim(s, p, band, Execution::Serial).data;
    }, exec);

    out.expected_f = Mat5::Zero();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        out.expected_f += w[i] * terms[i];
    }
    out.prior_info = Mat5::Zero();
    out.prior_info.bottomRightCorner<2, 2>() = out.c_xi.inverse();
    out.j.data = out.expected_f + out.prior_info;
    out.j.data = 0.5 * (out.j.data + out.j.data.transpose());
    out.evaluations = terms.size();
    return out;
}

std::string mode_label(Band band, BoundKind kind)
{
    switch (kind) {
    case BoundKind::Crb: return std::string(band_name(band)) + "/crb";
    case BoundKind::PositionCrb: return std::string(band_name(band)) + "/crb-unknown-config";
    case BoundKind::Hcrb: return std::string(band_name(band)) + "/hcrb";
    case BoundKind::CrbPerfect: return std::string(band_name(band)) + "/crb-perfect";
    case BoundKind::BareVehicle: return "bare-vehicle";
    }
    return "unknown";
}

namespace {

struct ScaledInverse {
    Eigen::MatrixXd inverse;
    double condition = 0.0;
};

ScaledInverse invert_scaled(const Eigen::MatrixXd& f)
{
    const Eigen::Index n = f.rows();
    Eigen::VectorXd dinv(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(f(i, i) > 0.0) || !std::isfinite(f(i, i))) {
            throw UnidentifiableParameters("information matrix has a nonpositive diagonal entry",
                                           std::numeric_limits<double>::infinity());
        }
        dinv(i) = 1.0 / std::sqrt(f(i, i));
    }
    const Eigen::MatrixXd scaled = dinv.asDiagonal() * (0.5 * (f + f.transpose())) * dinv.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scaled);
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    const double cond = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
    if (!(cond <= kMaxCondition)) {
        std::ostringstream msg;
        msg << "information matrix is singular to working precision (condition " << cond << ")";
        throw UnidentifiableParameters(msg.str(), cond);
    }
    const Eigen::MatrixXd v = es.eigenvectors();
    const Eigen::MatrixXd inv_scaled = v * es.eigenvalues().cwiseInverse().asDiagonal() * v.transpose();
    return ScaledInverse{dinv.asDiagonal() * inv_scaled * dinv.asDiagonal(), cond};
}

BoundResult make_result(const ScaledInverse& si, const std::string& mode)
{
    BoundResult out;
    out.covariance = 0.5 * (si.inverse + si.inverse.transpose());
    out.condition = si.condition;
    out.peb = std::sqrt(std::max(0.0, out.covariance.topLeftCorner(3, 3).trace()) / 3.0);
    out.mode = mode;
    return out;
}

} // namespace

BoundResult crb(const InfoMatrix& f, const std::string& mode)
{
    return make_result(invert_scaled(f.data), mode);
}

BoundResult position_crb(const InfoMatrix& f, const std::string& mode)
{
    const Eigen::Matrix2d fcc = f.f_xixi();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(0.5 * (fcc + fcc.transpose()));
    const double top = es.eigenvalues().cwiseAbs().maxCoeff();
    Eigen::Matrix2d pinv = Eigen::Matrix2d::Zero();
    for (int i = 0; i < 2; ++i) {
        const double l = es.eigenvalues()(i);
        if (top > 0.0 && l > 1e-12 * top) {
            pinv += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose() / l;
        }
    }
    const Mat3 schur = f.f_xx() - f.f_xxi() * pinv * f.f_xxi().transpose();
    return make_result(invert_scaled(schur), mode);
}

BoundResult crb_perfect_config(const Scenario& s, Band band, Execution exec)
{
    Scenario m = s;
    configure_matched(m);
    const InfoMatrix f = fim(m, params_of(m), band, exec);
    return make_result(invert_scaled(f.f_xx()), mode_label(band, BoundKind::CrbPerfect));
}

double effective_bandwidth(double f0, double bandwidth)
{
    if (!(f0 > 0.0) || !(bandwidth >= 0.0)) {
        throw InvalidArgument("effective_bandwidth: f0 must be positive, B nonnegative");
    }
    return std::sqrt(f0 * f0 + bandwidth * bandwidth / 12.0);
}

BareVehicleResult bare_vehicle_benchmark(const Scenario& s, double rcs_deficit_db, const Vec3& bias,
                                         double panel_side, Execution exec)
{
    if (!bias.allFinite() || !std::isfinite(rcs_deficit_db) || !(panel_side > 0.0)) {
        throw InvalidArgument("bare_vehicle_benchmark: bias and deficit must be finite, side positive");
    }
    Scenario b = s;
    BareVehicleResult out;
    out.rcs = peak_rcs(panel_side * panel_side, s.panel.f0) / std::pow(10.0, rcs_deficit_db / 10.0);
    b.point_rcs = out.rcs;
    configure_matched(b);
    const InfoMatrix f = fim(b, params_of(b), Band::Narrowband, exec);
    out.bound = make_result(invert_scaled(f.f_xx()), mode_label(Band::Narrowband, BoundKind::BareVehicle));
    out.rmse_bound = std::sqrt(out.bound.peb * out.bound.peb + bias.squaredNorm() / 3.0);
    return out;
}

} // namespace emslb
