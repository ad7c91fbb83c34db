#ifndef SYMCOV_LIKELIHOOD_HPP
#define SYMCOV_LIKELIHOOD_HPP

#include <array>
#include <span>

#include "symcov/internal_moments.hpp"
#include "symcov/interval.hpp"

namespace symcov {

/// Gradient of the interval log-likelihood in all eight parameters.
/// The sigma components are in standard-deviation coordinates
/// (d/d sigma_x, d/d sigma_y); see gradient_in_variance_coords for the
/// (sigma_x^2, sigma_y^2) chain-rule form.
struct GradientVector {
    double d_mu_x = 0.0;
    double d_mu_y = 0.0;
    double d_sigma_x = 0.0;
    double d_sigma_y = 0.0;
    double d_rho = 0.0;
    double d_gamma1 = 0.0;
    double d_gamma2 = 0.0;
    double d_gamma3 = 0.0;

    std::array<double, 8> as_array() const noexcept {
        return {d_mu_x, d_mu_y, d_sigma_x, d_sigma_y, d_rho, d_gamma1, d_gamma2, d_gamma3};
    }
};

enum class Reduction {
    Serial,   // left-to-right accumulation (default, bit-stable)
    Pairwise, // recursive pairwise sum, also deterministic
};

/// Log-density of the bivariate normal for an internal mean pair.
double bvn_logpdf(double theta1_x, double theta1_y, const TauParams& params);

/// Log-density of the bivariate Wishart W2(nu, Gamma) for an internal
/// variation triple, with the standard normalizing constant
/// 2^nu sqrt(pi) Gamma(nu/2) Gamma((nu-1)/2) |Gamma|^(nu/2). The triple
/// must lie strictly inside the support: theta2_x > 0, theta2_y > 0,
/// theta2_xy^2 < theta2_x * theta2_y.
double wishart_logpdf(double theta2_x, double theta2_y, double theta2_xy,
                      const TauParams& params);

/// Full interval log-likelihood: sum of the normal and Wishart
/// log-densities over the sample. Boundary variation triples (classical
/// data, or the rank-one triples produced by interval realizations) are
/// rejected with degenerate_theta; triples outside the closed support
/// with out_of_support.
double loglik(std::span<const ThetaRealization> thetas, const TauParams& params,
              Reduction reduction = Reduction::Serial);

/// Analytic gradient of loglik in all eight parameters
/// (standard-deviation coordinates for the sigmas).
GradientVector loglik_gradient(std::span<const ThetaRealization> thetas,
                               const TauParams& params);

/// Chain rule from (sigma_x, sigma_y) to (sigma_x^2, sigma_y^2)
/// coordinates: d/d sigma^2 = (d/d sigma) / (2 sigma).
GradientVector gradient_in_variance_coords(const GradientVector& grad,
                                           const TauParams& params);

/// Central finite-difference gradient of loglik (standard-deviation
/// coordinates), computed purely from log-likelihood values. Step is
/// relative per parameter and clamped away from the domain boundaries.
GradientVector loglik_gradient_fd(std::span<const ThetaRealization> thetas,
                                  const TauParams& params,
                                  double rel_step = 1e-5);

} // namespace symcov

#endif // SYMCOV_LIKELIHOOD_HPP
