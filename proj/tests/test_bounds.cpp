#include "emslb/bounds.hpp"
#include "emslb/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace emslb;

namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using CVec5 = Eigen::Matrix<std::complex<double>, 5, 1>;

Scenario small_scenario(int rx_per_side = 4, int panel_n = 40)
{
    Scenario s = default_scenario();
    s.terminal = default_terminal(78.5e9, 1e9, 0.5, rx_per_side);
    s.panel = square_panel(panel_n, 78.5e9);
    configure_matched(s);
    return s;
}

// Central differences of the model mean; independent of the analytic derivatives.
CVec5 fd_gradient(double f, std::size_t l, const Scenario& s, const ParamVector& p, Band band)
{
    CVec5 out;
    const Vec5 v0 = p.as_vector();
    for (int i = 0; i < 5; ++i) {
        const double h = 1e-7;
        Vec5 up = v0;
        Vec5 dn = v0;
        up(i) += h;
        dn(i) -= h;
        out(i) = (model_mean(f, l, s, ParamVector::from_vector(up), band) -
                  model_mean(f, l, s, ParamVector::from_vector(dn), band)) / (2 * h);
    }
    return out;
}

double rel_block_error(const CVec5& a, const CVec5& b, int start, int len)
{
    const double scale = b.segment(start, len).norm();
    return (a.segment(start, len) - b.segment(start, len)).norm() / scale;
}

Mat5 relative_difference(const Mat5& a, const Mat5& b)
{
    Mat5 out;
    for (int i = 0; i < 5; ++i) {
        for (int k = 0; k < 5; ++k) {
            out(i, k) = std::abs(a(i, k) - b(i, k)) / std::sqrt(b(i, i) * b(k, k));
        }
    }
    return out;
}

} // namespace

TEST(ModelDerivatives, MatchFiniteDifferences)
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> coord(-15.0, 15.0);
    std::uniform_real_distribution<double> down(-9.0, -3.0);
    std::uniform_real_distribution<double> head(-kPi, kPi);
    std::uniform_real_distribution<double> off(-0.004, 0.004);
    std::uniform_real_distribution<double> freq(-0.5e9, 0.5e9);
    for (int trial = 0; trial < 100; ++trial) {
        Scenario s = small_scenario();
        s.pose = make_pose(Vec3(coord(rng), coord(rng), down(rng)), head(rng));
        configure_matched(s);
        s.panel.config.theta += off(rng);
        s.panel.config.phi += off(rng);
        s.gamma = head(rng);
        const Band band = trial % 2 ? Band::Narrowband : Band::Wideband;
        const double f = freq(rng);
        const std::size_t l = static_cast<std::size_t>(trial) % s.terminal.channels();
        const ParamVector p = params_of(s);

        const ModelDerivatives d = model_derivatives(f, l, s, p, band);
        EXPECT_LT(std::abs(d.a - model_mean(f, l, s, p, band)), 1e-12 * std::abs(d.a));
        const CVec5 fd = fd_gradient(f, l, s, p, band);
        EXPECT_LT(rel_block_error(d.grad, fd, 0, 3), 1e-5) << "trial " << trial;
        EXPECT_LT(rel_block_error(d.grad, fd, 3, 2), 1e-5) << "trial " << trial;
    }
}

TEST(ModelDerivatives, ZeroOutsideBand)
{
    const Scenario s = small_scenario();
    const ModelDerivatives d = model_derivatives(0.7e9, 0, s, params_of(s), Band::Wideband);
    EXPECT_EQ(d.a, std::complex<double>(0.0, 0.0));
    EXPECT_EQ(d.grad.norm(), 0.0);
}

TEST(Fim, MatchesFiniteDifferenceOracle)
{
    Scenario s = small_scenario(3, 30);
    s.panel.config.phi += 0.004;
    const ParamVector p = params_of(s);
    const int points = 9;
    const double h = s.terminal.bandwidth / (points - 1);
    Mat5 acc = Mat5::Zero();
    for (int i = 0; i < points; ++i) {
        const double f = (i == points - 1) ? 0.5e9 : -0.5e9 + i * h;
        const double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
        for (std::size_t l = 0; l < s.terminal.channels(); ++l) {
            const CVec5 g = fd_gradient(f, l, s, p, Band::Wideband);
            acc += w * (g.conjugate() * g.transpose()).real();
        }
    }
    const Mat5 oracle = (2.0 / s.terminal.n0()) * h * acc;
    const Mat5 direct = fim_reference(s, p, Band::Wideband, points);
    EXPECT_LT(relative_difference(direct, oracle).maxCoeff(), 1e-4);

    s.quadrature.points = points;
    s.quadrature.tolerance = 1.0;
    const InfoMatrix f = fim(s, p, Band::Wideband);
    EXPECT_EQ(f.quadrature.points, points);
    EXPECT_LT(relative_difference(f.data, oracle).maxCoeff(), 1e-4);
}

TEST(Fim, SymmetricAndPsd)
{
    const Scenario s = default_scenario();
    for (Band band : {Band::Wideband, Band::Narrowband}) {
        ParamVector p = params_of(s);
        p.xi_bar.theta += 0.003;
        const InfoMatrix f = fim(s, p, band);
        EXPECT_TRUE(f.is_symmetric());
        EXPECT_TRUE(f.is_psd());
        EXPECT_LT(f.quadrature.relative_error, s.quadrature.tolerance);
    }
}

TEST(Fim, ScalesWithPowerOverNoise)
{
    Scenario s = default_scenario();
    const Mat5 base = fim(s, params_of(s), Band::Wideband).data;
    s.terminal.tx_power_dbm += 10.0;
    const Mat5 louder = fim(s, params_of(s), Band::Wideband).data;
    EXPECT_LT(relative_difference(louder, 10.0 * base).maxCoeff(), 1e-12);
    s = default_scenario();
    s.terminal.noise_psd_dbm_hz += 10.0;
    const Mat5 noisier = fim(s, params_of(s), Band::Wideband).data;
    EXPECT_LT(relative_difference(noisier, 0.1 * base).maxCoeff(), 1e-12);
}

TEST(Fim, CarrierOnlyIsNarrowBandLimit)
{
    Scenario s = default_scenario();
    // The squint term varies linearly across the band, so the error is second order in B.
    s.terminal.bandwidth = 1e4;
    ParamVector p = params_of(s);
    p.xi_bar.phi += 0.002;
    const Mat5 narrow = fim(s, p, Band::Wideband).data;
    s.quadrature.carrier_only = true;
    const InfoMatrix carrier = fim(s, p, Band::Wideband);
    EXPECT_EQ(carrier.quadrature.points, 1);
    EXPECT_LT(relative_difference(carrier.data, narrow).maxCoeff(), 1e-5);
}

TEST(Fim, QuadratureConvergedAtDefaultGrid)
{
    Scenario s = default_scenario();
    s.terminal.bandwidth = 4e9;
    ParamVector p = params_of(s);
    p.xi_bar.theta += 0.002;
    s.quadrature.tolerance = 1.0;
    const InfoMatrix coarse = fim(s, p, Band::Wideband);
    s.quadrature.points = 4097;
    s.quadrature.max_points = 4097;
    const InfoMatrix fine = fim(s, p, Band::Wideband);
    EXPECT_EQ(coarse.quadrature.points, 1025);
    EXPECT_LT(std::abs(position_crb(coarse).peb / position_crb(fine).peb - 1.0), 1e-3);
    EXPECT_LT(relative_difference(coarse.data, fine.data).maxCoeff(), 1e-3);
}

TEST(Fim, RaisesWhenQuadratureCannotConverge)
{
    Scenario s = default_scenario();
    s.terminal.bandwidth = 4e9;
    s.quadrature.points = 5;
    s.quadrature.max_points = 9;
    s.quadrature.tolerance = 1e-12;
    EXPECT_THROW(fim(s, params_of(s), Band::Wideband), NumericalAccuracyError);
    s.quadrature.points = 4;
    EXPECT_THROW(fim(s, params_of(s), Band::Wideband), ValidationError);
}

TEST(Fim, PointScattererMatchesClosedForm)
{
    // Flat amplitude b: F_xx = (2 E / N0) [L grad(b) grad(b)^T + b^2 sum_l (2 pi)^2 E_f[(f0+f)^2] t t^T].
    Scenario s = small_scenario();
    s.point_rcs = 0.3;
    const ParamVector p = params_of(s);
    const AmplitudeGradient a = amplitude_gradient(0.0, s, p, Band::Narrowband);
    const double f0 = s.terminal.f0;
    const double bw = s.terminal.bandwidth;
    const double second_moment = f0 * f0 + bw * bw / 12.0;
    Mat3 tt = Mat3::Zero();
    for (std::size_t l = 0; l < s.terminal.channels(); ++l) {
        const Vec3 t = channel_delay_gradient(s.terminal, l, p.x);
        tt += t * t.transpose();
    }
    const Vec3 gb = a.grad.head<3>();
    const Mat3 expected = (2.0 * s.waveform().energy / s.terminal.n0()) *
                          (static_cast<double>(s.terminal.channels()) * gb * gb.transpose() +
                           4.0 * kPi * kPi * second_moment * a.b * a.b * tt);
    const Mat3 got = fim(s, p, Band::Wideband).f_xx();
    EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-6 * expected.cwiseAbs().maxCoeff());
    EXPECT_EQ(fim(s, p, Band::Wideband).f_xixi().norm(), 0.0);
}

TEST(Crb, InverseOfInformation)
{
    const Scenario s = default_scenario();
    ParamVector p = params_of(s);
    p.xi_bar.phi += 0.003;
    const InfoMatrix f = fim(s, p, Band::Wideband);
    const BoundResult b = crb(f);
    const Eigen::MatrixXd prod = f.data * b.covariance;
    EXPECT_LT((prod - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_NEAR(b.peb, std::sqrt(b.covariance.topLeftCorner(3, 3).trace() / 3.0), 1e-18);
    EXPECT_GE(b.condition, 1.0);
    EXPECT_EQ(b.mode, "crb");
}

TEST(Crb, ScalesInverselyWithInformation)
{
    const Scenario s = default_scenario();
    ParamVector p = params_of(s);
    p.xi_bar.phi += 0.003;
    InfoMatrix f = fim(s, p, Band::Wideband);
    const BoundResult a = crb(f);
    f.data *= 4.0;
    const BoundResult b = crb(f);
    EXPECT_NEAR(b.peb / a.peb, 0.5, 1e-12);
    EXPECT_NEAR(b.condition, a.condition, 1e-6 * a.condition);
}

TEST(Crb, RejectsSingularInformation)
{
    InfoMatrix f;
    f.data = Mat5::Identity();
    f.data(4, 4) = 0.0;
    EXPECT_THROW(crb(f), UnidentifiableParameters);
    Vec5 v;
    v << 1.0, 2.0, 3.0, 4.0, 5.0;
    f.data = v * v.transpose() + 1e-14 * Mat5::Identity();
    try {
        crb(f);
        FAIL() << "expected UnidentifiableParameters";
    } catch (const UnidentifiableParameters& e) {
        EXPECT_GT(e.condition(), kMaxCondition);
    }
}

TEST(Crb, NarrowbandMatchedConfigurationHasNoAngleInformation)
{
    const Scenario s = default_scenario();
    const InfoMatrix f = fim(s, params_of(s), Band::Narrowband);
    EXPECT_LT(f.f_xixi().norm(), 1e-20 * f.f_xx().norm());
    EXPECT_THROW(crb(f), UnidentifiableParameters);
    // The Schur complement then reduces to the perfect-configuration bound.
    const BoundResult unknown = position_crb(f);
    const BoundResult perfect = crb_perfect_config(s, Band::Narrowband);
    EXPECT_NEAR(unknown.peb / perfect.peb, 1.0, 1e-9);
}

TEST(Crb, PositionBlockMatchesFullInverse)
{
    const Scenario s = default_scenario();
    ParamVector p = params_of(s);
    p.xi_bar.theta += 0.004;
    const InfoMatrix f = fim(s, p, Band::Wideband);
    const BoundResult full = crb(f);
    const BoundResult pos = position_crb(f);
    ASSERT_EQ(pos.covariance.rows(), 3);
    EXPECT_LT((pos.covariance - full.covariance.topLeftCorner(3, 3)).cwiseAbs().maxCoeff(),
              1e-6 * full.covariance.topLeftCorner(3, 3).cwiseAbs().maxCoeff());
    EXPECT_NEAR(pos.peb / full.peb, 1.0, 1e-6);
}

TEST(Crb, PerfectConfigurationNeverWorse)
{
    const Scenario s = default_scenario();
    for (Band band : {Band::Wideband, Band::Narrowband}) {
        const InfoMatrix f = fim(s, params_of(s), band);
        EXPECT_LE(crb_perfect_config(s, band).peb, position_crb(f).peb * (1.0 + 1e-9)) << band_name(band);
    }
}

TEST(Crb, PerfectConfigurationRegression)
{
    // Pinned from the 100 x 100 panel at the default pose.
    const Scenario s = default_scenario();
    EXPECT_NEAR(crb_perfect_config(s, Band::Wideband).peb, 8.012992e-4, 1e-9);
    EXPECT_NEAR(crb_perfect_config(s, Band::Narrowband).peb, 8.705256e-4, 1e-9);
    EXPECT_EQ(crb_perfect_config(s, Band::Wideband).mode, "wideband/crb-perfect");
}

TEST(Crb, PebFallsWithPanelSize)
{
    double previous = 1e9;
    for (int n : {50, 76, 100, 150}) {
        Scenario s = default_scenario();
        s.panel = square_panel(n, 78.5e9);
        configure_matched(s);
        const double peb = crb_perfect_config(s, Band::Wideband).peb;
        EXPECT_LT(peb, previous) << n;
        previous = peb;
    }
}

TEST(EffectiveBandwidth, Formula)
{
    EXPECT_DOUBLE_EQ(effective_bandwidth(78.5e9, 0.0), 78.5e9);
    EXPECT_NEAR(effective_bandwidth(78.5e9, 4e9), std::sqrt(78.5e9 * 78.5e9 + 16e18 / 12.0), 1.0);
    EXPECT_THROW(effective_bandwidth(0.0, 1e9), InvalidArgument);
}

TEST(ModeLabels, Strings)
{
    EXPECT_EQ(mode_label(Band::Wideband, BoundKind::PositionCrb), "wideband/crb-unknown-config");
    EXPECT_EQ(mode_label(Band::Narrowband, BoundKind::Hcrb), "narrowband/hcrb");
    EXPECT_EQ(mode_label(Band::Narrowband, BoundKind::BareVehicle), "bare-vehicle");
}

TEST(Hybrid, PriorInformationScalesAsInverseVariance)
{
    const Scenario s = small_scenario();
    const HybridInfo a = hybrid_im(s, PositionPrior{s.pose.x, 0.2}, Band::Wideband, 8);
    const HybridInfo b = hybrid_im(s, PositionPrior{s.pose.x, 0.4}, Band::Wideband, 8);
    EXPECT_LT((a.prior_info - 4.0 * b.prior_info).cwiseAbs().maxCoeff(), 1e-9 * a.prior_info.norm());
    EXPECT_EQ((a.prior_info.topLeftCorner<3, 3>().norm()), 0.0);
    EXPECT_EQ(a.evaluations, 8u);
}

TEST(Hybrid, PriorAddsInformation)
{
    const Scenario s = default_scenario();
    const HybridInfo h = hybrid_im(s, PositionPrior{s.pose.x, 0.5 / 3.0}, Band::Wideband, 64);
    const Mat5 diff = h.j.data - h.expected_f;
    Eigen::SelfAdjointEigenSolver<Mat5> es(0.5 * (diff + diff.transpose()));
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9 * h.j.data.trace());
    EXPECT_TRUE(h.j.is_symmetric());
    EXPECT_TRUE(h.j.is_psd());
}

TEST(Hybrid, MonteCarloAgreesWithGaussHermiteForSmallSpread)
{
    const Scenario s = default_scenario();
    for (double three_sigma : {0.1, 0.5}) {
        const PositionPrior prior{s.pose.x, three_sigma / 3.0};
        const HybridInfo mc = hybrid_im(s, prior, Band::Wideband, 512);
        const HybridInfo gh = hybrid_im(s, prior, Band::Wideband, 0, 0, Expectation::GaussHermite);
        EXPECT_EQ(gh.evaluations, 81u);
        const double tol = three_sigma < 0.2 ? 0.01 : 0.1;
        EXPECT_NEAR(crb(mc.j).peb / crb(gh.j).peb, 1.0, tol) << three_sigma;
    }
}

TEST(Hybrid, BoundGrowsWithPriorSpread)
{
    const Scenario s = default_scenario();
    double previous = 0.0;
    for (double three_sigma : {0.1, 0.5, 2.0}) {
        const HybridInfo h = hybrid_im(s, PositionPrior{s.pose.x, three_sigma / 3.0}, Band::Wideband);
        const double peb = crb(h.j).peb;
        EXPECT_GT(peb, previous) << three_sigma;
        previous = peb;
    }
    // Never below the perfect-configuration bound.
    EXPECT_GT(previous, crb_perfect_config(s, Band::Wideband).peb);
}

TEST(Hybrid, SingularPriorRejected)
{
    const Scenario s = small_scenario();
    EXPECT_THROW(hybrid_im(s, PositionPrior{s.pose.x, 0.0}, Band::Wideband, 8), UnidentifiableParameters);
    EXPECT_THROW(hybrid_im(s, PositionPrior{s.pose.x, 0.1}, Band::Wideband, 0), InvalidArgument);
}

TEST(Hybrid, ReproducibleForSeed)
{
    const Scenario s = small_scenario();
    const PositionPrior prior{s.pose.x, 0.3};
    const HybridInfo a = hybrid_im(s, prior, Band::Narrowband, 32, 9);
    const HybridInfo b = hybrid_im(s, prior, Band::Narrowband, 32, 9);
    const HybridInfo c = hybrid_im(s, prior, Band::Narrowband, 32, 10);
    EXPECT_EQ(a.j.data, b.j.data);
    EXPECT_NE(a.j.data, c.j.data);
}

TEST(BareVehicle, RcsAndRmseIdentities)
{
    const Scenario s = default_scenario();
    const Vec3 bias(0.1, 0.1, 0.1);
    const BareVehicleResult r = bare_vehicle_benchmark(s, 10.0, bias);
    EXPECT_NEAR(r.rcs, 0.1 * peak_rcs(0.075 * 0.075, 78.5e9), 1e-12 * r.rcs);
    EXPECT_NEAR(r.rmse_bound, std::sqrt(r.bound.peb * r.bound.peb + 0.01), 1e-15);
    EXPECT_EQ(r.bound.mode, "bare-vehicle");
    const BareVehicleResult unbiased = bare_vehicle_benchmark(s, 10.0, Vec3::Zero());
    EXPECT_DOUBLE_EQ(unbiased.rmse_bound, unbiased.bound.peb);
    EXPECT_THROW(bare_vehicle_benchmark(s, 10.0, bias, 0.0), InvalidArgument);
}

TEST(BareVehicle, PebScalesWithRcs)
{
    const Scenario s = default_scenario();
    const double a = bare_vehicle_benchmark(s, 10.0, Vec3::Zero()).bound.peb;
    const double b = bare_vehicle_benchmark(s, 20.0, Vec3::Zero()).bound.peb;
    EXPECT_NEAR(b / a / std::sqrt(10.0), 1.0, 1e-8);
}

TEST(BareVehicle, EmsDominatesFromComparableAperture)
{
    for (int n : {78, 100, 150}) {
        Scenario s = default_scenario();
        s.panel = square_panel(n, 78.5e9);
        configure_matched(s);
        const BareVehicleResult bare = bare_vehicle_benchmark(s, 10.0, Vec3(0.1, 0.1, 0.1));
        for (Band band : {Band::Wideband, Band::Narrowband}) {
            EXPECT_LT(crb_perfect_config(s, band).peb, bare.bound.peb) << n;
        }
    }
}
