#include "skg/theory.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "skg/channel.hpp"

namespace skg {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

GaussianJointModel build_joint_model(const SystemParams& params,
                                     const DerivedParams& derived) {
    const Covariances cov = channel_covariances(params);
    const double v = derived.est_noise_var;
    GaussianJointModel model;
    model.rho_ab = cov.rho_ab;
    model.rho_ae = cov.rho_ae;
    model.rho_be = cov.rho_be;
    model.est_noise_var = v;
    model.cov_ab_ba = {{{cov.rho_ab + v, cov.rho_ab},
                        {cov.rho_ab, cov.rho_ab + v}}};
    // Estimates of distinct links decorrelate: the direct channels are
    // independent and the reflected terms share no segment pair, so the
    // cross entries are identically zero for either probing direction.
    model.cov_with_eve = {{{cov.rho_ab + v, 0.0, 0.0},
                           {0.0, cov.rho_ae + v, 0.0},
                           {0.0, 0.0, cov.rho_be + v}}};
    return model;
}

double skr_lower_bound(double rho_ab, double est_noise_var, int t_s) {
    if (rho_ab < 0.0 || est_noise_var < 0.0)
        throw std::domain_error("skr_lower_bound: negative variance");
    if (t_s < 2) throw std::domain_error("skr_lower_bound: t_s < 2");
    if (rho_ab == 0.0) return 0.0;   // estimates carry no common randomness
    if (est_noise_var == 0.0) return inf;  // noiseless observation of a
                                           // continuous value
    const double ratio =
        rho_ab * rho_ab / (est_noise_var * (2.0 * rho_ab + est_noise_var));
    return (2.0 / t_s) * std::log1p(ratio) / std::numbers::ln2;
}

double skr_lower_bound(const SystemParams& params,
                       const DerivedParams& derived) {
    return skr_lower_bound(channel_covariances(params).rho_ab,
                           derived.est_noise_var, params.t_s);
}

namespace detail {

double gaussian_mi_bits(double var_x, double var_y, double c) {
    if (!(var_x >= 0.0) || !(var_y >= 0.0))
        throw std::domain_error("gaussian_mi_bits: negative variance");
    if (c == 0.0) return 0.0;  // uncorrelated Gaussians are independent
    const double det = var_x * var_y - c * c;
    if (det < 0.0)
        throw std::domain_error("gaussian_mi_bits: indefinite covariance");
    if (det == 0.0) return inf;
    return std::log2(var_x) + std::log2(var_y) - std::log2(det);
}

double gaussian_mi_bits_1v2(const std::array<std::array<double, 3>, 3>& cov) {
    const double d0 = cov[0][0];
    if (!(d0 > 0.0))
        throw std::domain_error("gaussian_mi_bits_1v2: marginal not positive");
    const double det_pair = cov[1][1] * cov[2][2] - cov[1][2] * cov[2][1];
    if (det_pair < 0.0)
        throw std::domain_error("gaussian_mi_bits_1v2: indefinite block");
    if (cov[0][1] == 0.0 && cov[0][2] == 0.0) return 0.0;  // independence
    // Cofactor expansion along the first row.
    const double det_joint =
        d0 * det_pair -
        cov[0][1] * (cov[1][0] * cov[2][2] - cov[1][2] * cov[2][0]) +
        cov[0][2] * (cov[1][0] * cov[2][1] - cov[1][1] * cov[2][0]);
    if (det_joint < 0.0)
        throw std::domain_error("gaussian_mi_bits_1v2: indefinite covariance");
    if (det_joint == 0.0) return inf;
    return std::log2(d0) + std::log2(det_pair) - std::log2(det_joint);
}

}  // namespace detail

double mi_oracle(const GaussianJointModel& model, int t_s) {
    if (t_s < 2) throw std::domain_error("mi_oracle: t_s < 2");
    const double a = model.cov_ab_ba[0][0];
    const double b = model.cov_ab_ba[0][1];
    if (!(a >= 0.0) || std::abs(b) > a)
        throw std::domain_error("mi_oracle: indefinite pair covariance");

    // Eigenvalues of [[a,b],[b,a]] are (a-b, a+b). a-b equals the stored
    // estimation-noise variance by construction; using it directly keeps the
    // small eigenvalue exact where forming a-b in doubles would cancel.
    const double lambda_small = model.est_noise_var;
    if (std::abs((a - b) - lambda_small) >
        64.0 * std::numeric_limits<double>::epsilon() * a)
        throw std::logic_error("mi_oracle: model matrix inconsistent with "
                               "est_noise_var");

    double mi_pair;
    if (b == 0.0) {
        mi_pair = 0.0;
    } else if (lambda_small == 0.0) {
        mi_pair = inf;  // singular joint, nonsingular marginals
    } else {
        mi_pair = 2.0 * std::log2(a) -
                  (std::log2(lambda_small) + std::log2(a + b));
    }

    // The Eve covariance is the same matrix for both probing directions, so
    // the two leakage terms coincide and the minimum is either one.
    const double eve_term = detail::gaussian_mi_bits_1v2(model.cov_with_eve);
    return (2.0 / t_s) * (mi_pair - eve_term);
}

}  // namespace skg
