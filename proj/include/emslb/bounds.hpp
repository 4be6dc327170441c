#pragma once

// Fisher and hybrid information over theta = [x; xi_bar], and the derived CRB, HCRB,
// perfect-configuration CRB and position error bound.

#include "emslb/alignment.hpp"
#include "emslb/channel.hpp"
#include "emslb/kernels.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <string>

namespace emslb {

// da_l(f)/dtheta; x rows first, then (theta_bar, phi_bar).
struct ModelDerivatives {
    std::complex<double> a{};
    Eigen::Matrix<std::complex<double>, 5, 1> grad;
};

ModelDerivatives model_derivatives(double f, std::size_t l, const Scenario& s, const ParamVector& p,
                                   Band band);

struct QuadratureReport {
    int points = 0;              // nodes actually used (1 in carrier-only mode)
    double relative_error = 0.0; // Richardson estimate, worst entry
};

struct InfoMatrix {
    Mat5 data = Mat5::Zero();
    QuadratureReport quadrature{};

    Mat3 f_xx() const { return data.topLeftCorner<3, 3>(); }
    Eigen::Matrix<double, 3, 2> f_xxi() const { return data.topRightCorner<3, 2>(); }
    Eigen::Matrix2d f_xixi() const { return data.bottomRightCorner<2, 2>(); }

    bool is_symmetric(double rel_tol = 1e-9) const;
    // Smallest eigenvalue >= -tol * trace.
    bool is_psd(double tol = 1e-9) const;
};

// F = (2/N0) Re sum_l int (da_l/dtheta)^H (da_l/dtheta) df over [-B/2, B/2].
// Trapezoid with the scenario's quadrature settings; the node count doubles until the
// Richardson estimate |T_h - T_2h| / 3, relative to sqrt(F_ii F_jj), is below tolerance.
// Throws NumericalAccuracyError when max_points is reached first.
InfoMatrix fim(const Scenario& s, const ParamVector& p, Band band,
               Execution exec = Execution::Parallel);

// Same quantity summed channel by channel from model_derivatives on a fixed grid.
// O(L) slower than fim; test oracle.
Mat5 fim_reference(const Scenario& s, const ParamVector& p, Band band, int points);

enum class Expectation { MonteCarlo, GaussHermite };

inline constexpr std::size_t kDefaultHybridSamples = 512;
inline constexpr int kGaussHermiteOrder = 9;

struct HybridInfo {
    InfoMatrix j;        // E[F] + J_R
    Mat5 expected_f;     // E_xi_bar[F]
    Mat5 prior_info;     // blockdiag(0, C_xi^-1)
    Eigen::Matrix2d c_xi;
    std::size_t evaluations = 0;
};

// J_HCRB = E_xi_bar[F] + J_R with xi_bar ~ N(xi, C_xi), C_xi propagated from the position
// prior at the true pose. Monte-Carlo uses per-sample seeds; Gauss-Hermite uses an
// order x order tensor rule on the Cholesky factor. Throws UnidentifiableParameters when
// C_xi is singular (use the perfect-configuration bound instead).
HybridInfo hybrid_im(const Scenario& s, const PositionPrior& prior, Band band,
                     std::size_t mc_samples = kDefaultHybridSamples,
                     std::uint64_t seed = kDefaultSeed,
                     Expectation method = Expectation::MonteCarlo,
                     Execution exec = Execution::Parallel);

enum class BoundKind { Crb, PositionCrb, Hcrb, CrbPerfect, BareVehicle };

std::string mode_label(Band band, BoundKind kind);

struct BoundResult {
    Eigen::MatrixXd covariance; // 5x5, or 3x3 for position-only bounds
    double peb = 0.0;           // sqrt(trace(C_xx) / 3), m
    double condition = 0.0;     // after symmetric diagonal scaling
    std::string mode;
};

inline constexpr double kMaxCondition = 1e12;

// Inverse through the eigendecomposition of D^-1/2 F D^-1/2 (D = diag F). Throws
// UnidentifiableParameters if a diagonal entry is not positive or the scaled condition
// number exceeds kMaxCondition.
BoundResult crb(const InfoMatrix& f, const std::string& mode = "crb");

// Position block of the inverse, [F_xx - F_xxi F_xixi^+ F_xix]^-1. Equals the x-block of
// crb() whenever F is invertible; when the configured angles carry no information
// (F_xixi = 0, narrowband at matched configuration) it reduces to F_xx^-1.
BoundResult position_crb(const InfoMatrix& f, const std::string& mode = "position-crb");

// (F_xx)^-1 at the matched configuration xi_bar = xi.
BoundResult crb_perfect_config(const Scenario& s, Band band, Execution exec = Execution::Parallel);

// sqrt(f0^2 + B^2 / 12).
double effective_bandwidth(double f0, double bandwidth);

struct BareVehicleResult {
    BoundResult bound; // raw position bound of the point scatterer
    double rmse_bound = 0.0; // sqrt(peb^2 + |bias|^2 / 3)
    double rcs = 0.0;        // m^2
};

inline constexpr double kBarePanelSide = 0.075;

// Perfect-configuration bound for a frequency-flat point scatterer with the peak RCS of a
// panel_side x panel_side plate at f0 reduced by rcs_deficit_db; the bias of the apparent
// scattering center is folded into an RMSE bound. The flat response makes the wideband
// and narrowband bounds coincide.
BareVehicleResult bare_vehicle_benchmark(const Scenario& s, double rcs_deficit_db, const Vec3& bias,
                                         double panel_side = kBarePanelSide,
                                         Execution exec = Execution::Parallel);

} // namespace emslb
