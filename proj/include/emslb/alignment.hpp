#pragma once

// Coarse-position-driven beam alignment: angular uncertainty from the position prior,
// codebook around the predicted incidence, RCS-maximizing sweep, training-time budget and
// Monte-Carlo RCS under positioning error.

#include "emslb/kernels.hpp"
#include "emslb/reflector.hpp"
#include "emslb/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace emslb {

// x_hat ~ N(mean, sigma^2 I3).
struct PositionPrior {
    Vec3 mean = Vec3::Zero();
    double sigma = 0.0;
};

// d(theta, phi)/dx of the incidence angles J(-Q_z(psi)^T x).
// Throws PoleSingularity on the panel normal, DegenerateGeometry for x = 0.
Eigen::Matrix<double, 2, 3> incidence_jacobian(const Pose& pose);

// First-order C_xi = sigma^2 J J^T at pose.
Eigen::Matrix2d angle_error_covariance(const Pose& pose, const PositionPrior& prior);

struct Codebook {
    std::vector<AnglePair> entries; // row-major over (q, k): k fastest
    int k_count = 0;                // K, azimuth samples - 1
    int q_count = 0;                // Q, elevation samples - 1
    double kappa = 3.0;
    AnglePair center{};
    double step_theta = 0.0;
    double step_phi = 0.0;
};

// Round half away from zero, clamped to >= 0, then raised to the next even number so the
// grid contains xi_hat itself.
int codebook_count(double kappa_sigma, double beamwidth);

// Grid xi_hat + ((k - K/2) step_theta, (q - Q/2) step_phi) with K = round(2 kappa
// sigma_theta / dtheta) and Q likewise. The step equals the beamwidth; scaled_step uses
// dtheta / (kappa sigma_theta) whenever kappa sigma_theta >= 1. Azimuths wrap, elevations
// clamp to [0, pi]. Throws InvalidArgument for kappa < 1 or nonpositive beamwidths.
Codebook build_codebook(const AnglePair& xi_hat, const Eigen::Matrix2d& c_xi,
                        const Beamwidths& beamwidths, double kappa, bool scaled_step = false);

struct SweepResult {
    AnglePair xi_opt{};
    std::size_t index = 0;
    double rcs = 0.0; // m^2 at f0
    std::vector<double> rcs_trace;
};

// Argmax over the codebook of rcs(panel, 0, true_xi, entry). Ties go to the entry closest
// to the codebook center, then to the lowest index.
SweepResult sweep(const Codebook& codebook, const RisPanel& panel, const AnglePair& true_xi);

struct MobilityBudget {
    double v = 0.0;
    double t_pri = 0.0;
    double d_min = 0.0;
    double phi_min = 0.0;
    double kq_max = 0.0;       // largest affordable K x Q
    double t_train_max = 0.0;  // t_pri * kq_max
};

// kq_max = min(dtheta D / (v T), dphi D / (v T cos(phi_min))).
MobilityBudget training_budget(double v, double t_pri, double d_min, double phi_min,
                               const Beamwidths& beamwidths);

struct RcsStatistics {
    double mean = 0.0;   // m^2
    double stddev = 0.0; // sample standard deviation, m^2
    double peak = 0.0;   // matched-configuration RCS at f0
    std::size_t samples = 0;
};

inline constexpr std::size_t kDefaultRcsSamples = 10000;
inline constexpr std::uint64_t kDefaultSeed = 20240601;

// Monte-Carlo RCS at f0 when the panel is configured from a noisy position, true pose from
// the scenario. Samples are reduced serially in index order.
RcsStatistics average_rcs_under_error(const Scenario& s, const PositionPrior& prior,
                                      std::size_t n_samples = kDefaultRcsSamples,
                                      std::uint64_t seed = kDefaultSeed,
                                      Execution exec = Execution::Parallel);

// One coarse-position trial: configure at xi_hat (pre) versus after the sweep (post).
struct AlignmentTrial {
    double pre_rcs = 0.0;
    double post_rcs = 0.0;
    double peak_rcs = 0.0;
    std::size_t codebook_size = 0;
};

struct AlignmentStudy {
    std::vector<AlignmentTrial> trials;
    double fraction_within_3db = 0.0; // post-sweep RCS within 3 dB of peak
    double min_gain_db = 0.0;         // min over trials of post - pre
    double mean_codebook_size = 0.0;
};

// For each trial draws x_hat ~ N(x, sigma^2 I), builds the codebook from J(x_hat) and the
// covariance propagated at x_hat, then sweeps against the true incidence.
AlignmentStudy alignment_study(const Scenario& s, double sigma, double kappa, std::size_t trials,
                               std::uint64_t seed, bool scaled_step = false,
                               Execution exec = Execution::Parallel);

// Text records: '#' comment lines, then one "theta,phi" row per entry in radians, 12
// significant digits.
void write_codebook(std::ostream& os, const Codebook& codebook);
std::vector<AnglePair> read_codebook(std::istream& is);

} // namespace emslb
