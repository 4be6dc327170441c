#include "emslb/channel.hpp"
#include "emslb/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace emslb;

namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;

// Radar equation for received power per unit transmit power, written independently of
// the amplitude form used by the library.
double radar_gain(double f0, double rcs_m2, double range)
{
    const double lambda = kSpeedOfLight / f0;
    return lambda * lambda * rcs_m2 / (std::pow(4.0 * kPi, 3) * std::pow(range, 4));
}

double wrapped(double a)
{
    return std::remainder(a, 2.0 * kPi);
}

Scenario random_scenario(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> coord(-15.0, 15.0);
    std::uniform_real_distribution<double> down(-9.0, -3.0);
    std::uniform_real_distribution<double> head(-kPi, kPi);
    std::uniform_real_distribution<double> off(-0.004, 0.004);
    std::uniform_int_distribution<int> half(10, 60);
    Scenario s;
    s.pose = make_pose(Vec3(coord(rng), coord(rng), down(rng)), head(rng));
    s.panel = square_panel(2 * half(rng), s.terminal.f0);
    configure_matched(s);
    // Slightly off the matched angles so the gradient is not at a stationary point.
    s.panel.config.theta += off(rng);
    s.panel.config.phi += off(rng);
    return s;
}

} // namespace

TEST(Units, DbmConversions)
{
    EXPECT_DOUBLE_EQ(dbm_to_watt(30.0), 1.0);
    EXPECT_NEAR(dbm_to_watt(23.0), 0.19952623149688797, 1e-15);
    EXPECT_NEAR(watt_to_dbm(dbm_to_watt(-173.0)), -173.0, 1e-10);
}

TEST(Terminal, DefaultLayout)
{
    const SensingTerminal t = default_terminal(78.5e9, 1e9);
    ASSERT_EQ(t.tx.size(), 1u);
    ASSERT_EQ(t.rx.size(), 400u);
    EXPECT_EQ(t.channels(), 400u);
    Vec3 mean = Vec3::Zero();
    for (const auto& r : t.rx) {
        EXPECT_EQ(r.x(), 0.0);
        mean += r;
    }
    EXPECT_LT((mean / 400.0).norm(), 1e-15);
    const double half_lambda = 0.5 * kSpeedOfLight / 78.5e9;
    EXPECT_NEAR((t.rx[1] - t.rx[0]).norm(), half_lambda, 1e-15);
    EXPECT_EQ(&t.tx_of(399), &t.tx[0]);
    EXPECT_EQ(&t.rx_of(17), &t.rx[17]);
}

TEST(Terminal, Validation)
{
    SensingTerminal t = default_terminal(78.5e9, 1e9);
    EXPECT_NO_THROW(validate_terminal(t));
    t.bandwidth = 0.0;
    EXPECT_THROW(validate_terminal(t), ValidationError);
    t = default_terminal(1e9, 3e9);
    EXPECT_THROW(validate_terminal(t), ValidationError);
    t = default_terminal(78.5e9, 1e9);
    t.rx.clear();
    EXPECT_THROW(validate_terminal(t), ValidationError);
}

TEST(Scenario, DefaultsAndValidation)
{
    const Scenario s = default_scenario();
    EXPECT_NO_THROW(validate_scenario(s));
    EXPECT_EQ(s.configured(), s.incidence());
    EXPECT_NEAR(s.waveform().energy, dbm_to_watt(23.0) * 1e-6, 1e-20);
    EXPECT_NEAR(s.waveform().psd(), s.waveform().energy / 1e9, 1e-28);

    Scenario bad = s;
    bad.panel.f0 = 77e9;
    EXPECT_THROW(validate_scenario(bad), ValidationError);
    bad = s;
    bad.pose.x = Vec3::Zero();
    EXPECT_THROW(validate_scenario(bad), ValidationError);
    bad = s;
    bad.quadrature.points = 1024;
    EXPECT_THROW(validate_scenario(bad), ValidationError);
    bad = s;
    bad.point_rcs = -1.0;
    EXPECT_THROW(validate_scenario(bad), ValidationError);
}

TEST(Waveform, FlatInBandZeroOutside)
{
    const Waveform w{2e9, 4e-9};
    EXPECT_DOUBLE_EQ(w.spectrum(0.0), std::sqrt(2e-18));
    EXPECT_DOUBLE_EQ(w.spectrum(1e9), w.spectrum(-1e9));
    EXPECT_EQ(w.spectrum(1.01e9), 0.0);
}

TEST(Beta, MatchesRadarEquation)
{
    const Scenario s = default_scenario();
    const double range = s.pose.x.norm();
    const auto b = beta(0.0, s.pose, s.panel, 0.0, s.incidence(), s.configured());
    const double sigma = peak_rcs(s.panel.area(), s.panel.f0);
    EXPECT_NEAR(std::norm(b) / radar_gain(s.panel.f0, sigma, range), 1.0, 1e-12);
}

TEST(Beta, CarriesScatteringPhase)
{
    const Scenario s = default_scenario();
    const auto b = beta(0.0, s.pose, s.panel, 0.7, s.incidence(), s.configured());
    EXPECT_NEAR(std::arg(b), 0.7, 1e-15);
}

TEST(Beta, InverseSquareRangeInAmplitude)
{
    Scenario s = default_scenario();
    const auto b1 = beta(3e8, s.pose, s.panel, 0.0, s.incidence(), s.configured());
    s.pose.x *= 2.0;
    const auto b2 = beta(3e8, s.pose, s.panel, 0.0, s.incidence(), s.configured());
    // Angles are unchanged along the ray, so only the range factor moves.
    EXPECT_NEAR(std::abs(b2) / std::abs(b1), 0.25, 1e-14);
}

TEST(Beta, VanishesAtArrayNull)
{
    const Scenario s = default_scenario();
    const Vec3 u = unit_vector(s.incidence());
    // First null of an N-element factor: offset 2 / N in the direction cosine at d = lambda/4.
    const double du = 2.0 / s.panel.n_x;
    const double ux = u.x() + du;
    const Vec3 ubar(ux, u.y(), std::sqrt(1.0 - ux * ux - u.y() * u.y()));
    const auto b = beta(0.0, s.pose, s.panel, 0.0, s.incidence(), cart_to_angles(ubar));
    const auto peak = beta(0.0, s.pose, s.panel, 0.0, s.incidence(), s.incidence());
    EXPECT_LT(std::abs(b) / std::abs(peak), 1e-7);
}

TEST(Beta, DegenerateRange)
{
    const Scenario s = default_scenario();
    EXPECT_THROW(beta(0.0, Pose{}, s.panel, 0.0, {}, {}), DegenerateGeometry);
}

TEST(Delay, FormulaAndGradient)
{
    const SensingTerminal t = default_terminal(78.5e9, 1e9);
    const Vec3 x(10.0, 5.0, -6.5);
    for (std::size_t l : {0u, 57u, 399u}) {
        const Vec3 sr = t.tx_of(l) + t.rx_of(l);
        const double expected = (2.0 * x.norm() - sr.dot(x.normalized())) / kSpeedOfLight;
        EXPECT_NEAR(channel_delay(t, l, x), expected, 1e-22);

        const Vec3 g = channel_delay_gradient(t, l, x);
        for (int i = 0; i < 3; ++i) {
            Vec3 e = Vec3::Zero();
            e(i) = 1e-4;
            const double fd = (channel_delay(t, l, x + e) - channel_delay(t, l, x - e)) / 2e-4;
            EXPECT_NEAR(g(i), fd, 1e-9 * g.norm());
        }
    }
}

TEST(Received, ZeroOutsideBand)
{
    const Scenario s = default_scenario();
    EXPECT_EQ(received_spectrum(0.51e9, 0, s), std::complex<double>(0.0, 0.0));
    EXPECT_EQ(narrowband_received(-0.6e9, 3, s), std::complex<double>(0.0, 0.0));
    EXPECT_NE(received_spectrum(0.5e9, 0, s), std::complex<double>(0.0, 0.0));
}

TEST(Received, PhaseDifferenceBetweenChannelsIsDelayDifference)
{
    const Scenario s = default_scenario();
    for (double f : {-0.4e9, 0.0, 0.3e9}) {
        const auto a1 = received_spectrum(f, 5, s);
        const auto a2 = received_spectrum(f, 300, s);
        const double dt = channel_delay(s.terminal, 300, s.pose.x) - channel_delay(s.terminal, 5, s.pose.x);
        const double expected = -2.0 * kPi * (s.terminal.f0 + f) * dt;
        EXPECT_NEAR(wrapped(std::arg(a2 / a1) - expected), 0.0, 1e-6);
    }
}

TEST(Received, MagnitudeIndependentOfChannel)
{
    const Scenario s = default_scenario();
    const double ref = std::abs(received_spectrum(0.2e9, 0, s));
    for (std::size_t l = 1; l < s.terminal.channels(); l += 37) {
        EXPECT_DOUBLE_EQ(std::abs(received_spectrum(0.2e9, l, s)), ref);
    }
}

TEST(Received, NarrowbandEqualsWidebandAtCarrier)
{
    const Scenario s = default_scenario();
    for (std::size_t l : {0u, 123u}) {
        EXPECT_EQ(received_spectrum(0.0, l, s), narrowband_received(0.0, l, s));
    }
}

TEST(Received, NarrowbandMagnitudeIsFlat)
{
    const Scenario s = default_scenario();
    const double ref = std::abs(narrowband_received(0.0, 0, s));
    for (double f = -0.5e9; f <= 0.5e9; f += 0.125e9) {
        EXPECT_NEAR(std::abs(narrowband_received(f, 0, s)) / ref, 1.0, 1e-14);
    }
}

TEST(Received, WidebandOverNarrowbandIsSquintLoss)
{
    Scenario s = default_scenario();
    s.terminal.bandwidth = 4e9;
    const double f0 = s.terminal.f0;
    for (double f : {-2e9, -0.7e9, 0.9e9, 2e9}) {
        const double ratio = std::norm(received_spectrum(f, 0, s)) / std::norm(narrowband_received(f, 0, s));
        const double g = array_factor(s.panel, f, s.incidence(), s.configured());
        const double growth = std::pow((f0 + f) / f0, 2);
        EXPECT_NEAR(ratio, g * growth, 1e-12);
    }
}

TEST(Received, WidebandEnergyBelowNarrowbandUpToCarrierGrowth)
{
    Scenario s = default_scenario();
    s.terminal.bandwidth = 4e9;
    double wb = 0.0;
    double nb = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double f = -2e9 + i * 1e7;
        wb += std::norm(received_spectrum(f, 0, s));
        nb += std::norm(narrowband_received(f, 0, s));
    }
    EXPECT_LT(wb, nb * std::pow((s.terminal.f0 + 2e9) / s.terminal.f0, 2));
    EXPECT_LT(wb, nb); // squint loss at 4 GHz dominates the small carrier growth
}

TEST(Snr, MatchesRadarEquationForNarrowBand)
{
    Scenario s = default_scenario();
    s.terminal.bandwidth = 1e6; // squint loss negligible
    const double sigma = peak_rcs(s.panel.area(), s.panel.f0);
    const double energy = dbm_to_watt(23.0) * 1e-6;
    const double expected =
        10.0 * std::log10(energy * radar_gain(s.panel.f0, sigma, s.pose.x.norm()) / dbm_to_watt(-173.0));
    const auto snr = channel_snr_db(s, 65);
    ASSERT_EQ(snr.size(), 400u);
    EXPECT_NEAR(snr[0], expected, 1e-4);
    for (double v : snr) {
        EXPECT_DOUBLE_EQ(v, snr[0]);
    }
}

TEST(Snr, DoublingPowerAddsThreeDecibels)
{
    Scenario s = default_scenario();
    const double base = channel_snr_db(s, 129)[0];
    s.terminal.tx_power_dbm += 10.0 * std::log10(2.0);
    EXPECT_NEAR(channel_snr_db(s, 129)[0] - base, 3.0103, 1e-4);
}

TEST(Snr, IndependentOfPriorSigma)
{
    Scenario s = default_scenario();
    const double base = channel_snr_db(s, 129)[0];
    s.sigma = 0.01;
    EXPECT_EQ(channel_snr_db(s, 129)[0], base);
    EXPECT_THROW(channel_snr_db(s, 1), InvalidArgument);
}

TEST(Params, VectorRoundTrip)
{
    const ParamVector p{Vec3(1.0, -2.0, 3.0), AnglePair{0.4, 1.1}};
    const Vec5 v = p.as_vector();
    EXPECT_EQ(v(3), 0.4);
    const ParamVector q = ParamVector::from_vector(v);
    EXPECT_EQ(q.x, p.x);
    EXPECT_EQ(q.xi_bar, p.xi_bar);
}

TEST(AmplitudeGradient, MatchesFiniteDifferences)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> freq(-0.5e9, 0.5e9);
    for (int trial = 0; trial < 100; ++trial) {
        const Scenario s = random_scenario(rng);
        const ParamVector p = params_of(s);
        const Band band = trial % 2 ? Band::Narrowband : Band::Wideband;
        const double f = freq(rng);
        const AmplitudeGradient g = amplitude_gradient(f, s, p, band);

        auto b_at = [&](const Vec5& v) {
            return std::abs(model_mean(f, 0, s, ParamVector::from_vector(v), band)) /
                   s.waveform().spectrum(f);
        };
        EXPECT_NEAR(g.b, b_at(p.as_vector()), 1e-12 * g.b);
        const Vec5 v0 = p.as_vector();
        for (int i = 0; i < 5; ++i) {
            const double h = i < 3 ? 1e-5 : 1e-7;
            Vec5 up = v0;
            Vec5 dn = v0;
            up(i) += h;
            dn(i) -= h;
            const double fd = (b_at(up) - b_at(dn)) / (2 * h);
            const double scale = i < 3 ? g.grad.head<3>().norm() : g.grad.tail<2>().norm();
            EXPECT_NEAR(g.grad(i), fd, 1e-4 * scale + 1e-12 * g.b) << "trial " << trial << " i " << i;
        }
    }
}

TEST(AmplitudeGradient, StationaryInAnglesAtMatchedCarrier)
{
    const Scenario s = default_scenario();
    const AmplitudeGradient g = amplitude_gradient(0.0, s, params_of(s), Band::Wideband);
    EXPECT_LT(g.grad.tail<2>().norm(), 1e-12 * g.b);
    // Only the range law remains in the position part.
    const Vec3 range_law = -2.0 * g.b * s.pose.x / s.pose.x.squaredNorm();
    EXPECT_LT((g.grad.head<3>() - range_law).norm(), 1e-9 * range_law.norm());
}

TEST(AmplitudeGradient, PointScattererHasRangeLawOnly)
{
    Scenario s = default_scenario();
    s.point_rcs = 0.5;
    const AmplitudeGradient g = amplitude_gradient(0.3e9, s, params_of(s), Band::Wideband);
    EXPECT_NEAR(g.b * g.b, radar_gain(s.panel.f0, 0.5, s.pose.x.norm()), 1e-12 * g.b * g.b);
    EXPECT_EQ(g.grad(3), 0.0);
    EXPECT_EQ(g.grad(4), 0.0);
    EXPECT_NEAR(g.grad.head<3>().dot(s.pose.x.normalized()), -2.0 * g.b / s.pose.x.norm(), 1e-12 * g.b);
}

TEST(AmplitudeGradient, PoleAndDegenerateInputs)
{
    Scenario s = default_scenario();
    s.pose.x = Vec3(0.0, 0.0, -8.0);
    EXPECT_THROW(amplitude_gradient(0.0, s, params_of(s), Band::Wideband), PoleSingularity);
    s = default_scenario();
    ParamVector p = params_of(s);
    p.xi_bar.phi = 0.0;
    EXPECT_THROW(amplitude_gradient(0.0, s, p, Band::Wideband), PoleSingularity);
    p = params_of(s);
    p.x = Vec3::Zero();
    EXPECT_THROW(amplitude_gradient(0.0, s, p, Band::Wideband), DegenerateGeometry);
}
