#include "emslb/kernels.hpp"

#include "emslb/errors.hpp"

#include <exception>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace emslb {

const char* execution_name(Execution e)
{
    return e == Execution::Serial ? "serial" : "parallel";
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_max_threads(int n)
{
#ifdef _OPENMP
    if (n > 0) {
        omp_set_num_threads(n);
    }
#else
    (void)n;
#endif
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, Execution exec)
{
    if (exec == Execution::Serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::exception_ptr error;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(emslb_parallel_for_error)
            if (!error) {
                error = std::current_exception();
            }
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Vec3 standard_normal3(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double a = normal(rng);
    const double b = normal(rng);
    const double c = normal(rng);
    return Vec3(a, b, c);
}

FimIntegrand::FimIntegrand(const Scenario& s, const ParamVector& p, Band band)
    : s_(s), p_(p), band_(band), delay_outer_(Mat3::Zero())
{
    for (std::size_t l = 0; l < s.terminal.channels(); ++l) {
        const Vec3 t = channel_delay_gradient(s.terminal, l, p.x);
        delay_outer_ += t * t.transpose();
    }
}

Mat5 FimIntegrand::operator()(double f) const
{
    const AmplitudeGradient a = amplitude_gradient(f, s_, p_, band_);
    const double k = 2.0 * kPi * (s_.panel.f0 + f);
    Mat5 m = static_cast<double>(s_.terminal.channels()) * (a.grad * a.grad.transpose());
    m.topLeftCorner<3, 3>() += (k * k * a.b * a.b) * delay_outer_;
    return m;
}

TrapezoidResult trapezoid_fim(const FimIntegrand& g, double lo, double hi, int points,
                              Execution exec)
{
    if (points < 3 || points % 2 == 0) {
        throw InvalidArgument("trapezoid_fim: points must be odd and >= 3");
    }
    const double h = (hi - lo) / (points - 1);
    std::vector<Mat5> nodes(static_cast<std::size_t>(points));
    parallel_for(nodes.size(), [&](std::size_t i) {
        const double f = (static_cast<int>(i) == points - 1) ? hi : lo + static_cast<double>(i) * h;
        nodes[i] = g(f);
    }, exec);

    TrapezoidResult out;
    const std::size_t last = nodes.size() - 1;
    for (std::size_t i = 0; i <= last; ++i) {
        const double w = (i == 0 || i == last) ? 0.5 : 1.0;
        out.fine += w * nodes[i];
        if (i % 2 == 0) {
            out.coarse += w * nodes[i];
        }
    }
    out.fine *= h;
    out.coarse *= 2.0 * h;
    return out;
}

std::vector<double> rcs_under_error_samples(const Scenario& s, double sigma, std::size_t n,
                                            std::uint64_t seed, Execution exec)
{
    const AnglePair xi = s.incidence();
    std::vector<double> out(n);
    parallel_for(n, [&](std::size_t i) {
        const Vec3 x_hat = s.pose.x + sigma * standard_normal3(sample_seed(seed, i));
        const AnglePair xi_hat = ems_incidence_angles(Pose{x_hat, s.pose.psi});
        out[i] = rcs(s.panel, 0.0, xi, xi_hat);
    }, exec);
    return out;
}

} // namespace emslb
