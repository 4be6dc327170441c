#pragma once

// Hot loops of the library, each available serially and with OpenMP. Per-item results are
// stored and reduced serially in index order, so both paths give bit-identical output for
// any thread count.

#include "emslb/channel.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace emslb {

enum class Execution { Serial, Parallel };

const char* execution_name(Execution e);

// Threads used by Execution::Parallel (1 when built without OpenMP).
int max_threads();
void set_max_threads(int n);

// Runs body(i) for i in [0, n). The first exception raised by any iteration is rethrown
// after the loop completes.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, Execution exec);

// Seed for sample `index` of a run seeded with `master` (splitmix64 finalizer), so sample
// streams do not depend on which thread draws them.
std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index);

// Three independent standard normal draws from a generator seeded with `seed`.
Vec3 standard_normal3(std::uint64_t seed);

using Mat5 = Eigen::Matrix<double, 5, 5>;

// Fisher integrand at baseband f per unit |S(f)|^2, without the 2/N0 factor:
//   L grad(b) grad(b)^T + (2 pi (f0 + f))^2 b^2 sum_l t_l t_l^T,
// with b = |beta| and t_l the delay gradient (zero in the configured-angle rows).
// The cross terms between amplitude and phase derivatives are purely imaginary.
class FimIntegrand {
public:
    FimIntegrand(const Scenario& s, const ParamVector& p, Band band);
    Mat5 operator()(double f) const;

private:
    Scenario s_;
    ParamVector p_;
    Band band_;
    Mat3 delay_outer_;
};

struct TrapezoidResult {
    Mat5 fine = Mat5::Zero();   // all nodes
    Mat5 coarse = Mat5::Zero(); // every other node, step 2h
};

// Composite trapezoid of g over `points` (odd, >= 3) uniform nodes on [lo, hi].
TrapezoidResult trapezoid_fim(const FimIntegrand& g, double lo, double hi, int points,
                              Execution exec);

// rcs(panel, 0, xi, J(-Q^T x_hat_s)) for x_hat_s = x + sigma z_s, s = 0..n-1, where xi is
// the true incidence. z_s comes from sample_seed(seed, s).
std::vector<double> rcs_under_error_samples(const Scenario& s, double sigma, std::size_t n,
                                            std::uint64_t seed, Execution exec);

} // namespace emslb
