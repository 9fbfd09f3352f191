#ifndef SKG_THEORY_HPP
#define SKG_THEORY_HPP

#include <array>

#include "skg/params.hpp"

namespace skg {

// Joint Gaussian description of the per-period estimates.
//
// cov_ab_ba is the covariance of (Alice's estimate, Bob's estimate) of the
// reciprocal channel; cov_with_eve the covariance of one legitimate estimate
// with Eve's two estimates, which is the same matrix for either direction.
// The generating scalars are retained next to the matrices: the 2x2 has
// eigenvalues (est_noise_var, 2*rho_ab + est_noise_var), and keeping the
// small one exact matters when est_noise_var is many orders below rho_ab.
struct GaussianJointModel {
    double rho_ab;
    double rho_ae;
    double rho_be;
    double est_noise_var;
    std::array<std::array<double, 2>, 2> cov_ab_ba;
    std::array<std::array<double, 3>, 3> cov_with_eve;
};

GaussianJointModel build_joint_model(const SystemParams& params,
                                     const DerivedParams& derived);

// Secret key rate lower bound in bits per channel-use symbol:
//   (2/t_s) * log2(1 + rho^2 / (v * (2*rho + v)))
// with v the estimation error variance. v == 0 with rho > 0 yields +inf
// (noiseless estimates of a continuous value); rho == 0 yields 0.
double skr_lower_bound(double rho_ab, double est_noise_var, int t_s);
double skr_lower_bound(const SystemParams& params, const DerivedParams& derived);

// Same quantity by an independent route: complex Gaussian mutual information
// from log-determinants of the model's covariance matrices,
//   I(A;B) - min over directions of I(legitimate; Eve's pair),
// scaled by 2/t_s. The Eve terms are exactly 0 whenever the cross-covariance
// block is exactly zero (independence of jointly Gaussian vectors). Singular
// joint covariance with nonsingular marginals yields +inf; indefinite input
// throws std::domain_error.
double mi_oracle(const GaussianJointModel& model, int t_s);

namespace detail {
// Mutual information in bits between two scalar complex Gaussians with
// variances var_x, var_y and real cross-covariance c, via log-det.
double gaussian_mi_bits(double var_x, double var_y, double c);

// Mutual information in bits between component 0 of a 3x3 covariance and the
// pair (1, 2): log2(det(S_0) * det(S_12) / det(S)). Exactly 0 when both cross
// entries are exactly zero.
double gaussian_mi_bits_1v2(const std::array<std::array<double, 3>, 3>& cov);
}  // namespace detail

}  // namespace skg

#endif
