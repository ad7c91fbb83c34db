#ifndef SYMCOV_ASYMPTOTICS_HPP
#define SYMCOV_ASYMPTOTICS_HPP

#include <array>
#include <span>

#include "symcov/estimators.hpp"
#include "symcov/interval.hpp"

namespace symcov {

/// Closed-form asymptotic variances of every estimator at sample size n.
struct AsymptoticReport {
    double var_mu_x = 0.0;     // sigma_x^2 / n
    double var_mu_y = 0.0;     // sigma_y^2 / n
    double var_sigma2_x = 0.0; // 2 sigma_x^4 / n
    double var_sigma2_y = 0.0; // 2 sigma_y^4 / n
    double var_sigma_xy = 0.0; // (1 + rho^2) sigma_x^2 sigma_y^2 / n
    double var_gamma1 = 0.0;   // 2 gamma1^2 / (nu n)
    double var_gamma2 = 0.0;   // 2 gamma2^2 / (nu n)
    double var_gamma3 = 0.0;   // (gamma1 gamma2 + gamma3^2) / (nu n)
    double var_s2_x = 0.0;     // 2 (gamma1^2 + nu sigma_x^4) / (nu n)
    double var_s2_y = 0.0;     // 2 (gamma2^2 + nu sigma_y^4) / (nu n)
    double var_s_xy = 0.0;     // ((gamma1 gamma2 + gamma3^2) + nu (1+rho^2) sigma_x^2 sigma_y^2) / (nu n)
};

/// The ten-component layout used by the simulation tables: estimator
/// values interleaved with their n-scaled asymptotic variances, in the
/// order (mu_x, n Var(mu_x), mu_y, n Var(mu_y), S2_X, n Var(S2_X),
/// S2_Y, n Var(S2_Y), S_XY, n Var(S_XY)).
using GVector = std::array<double, 10>;

/// Component names for the GVector layout, index 0..9.
std::array<const char*, 10> g_component_names() noexcept;

AsymptoticReport asymptotic_variances(const TauParams& params, long n);

/// Theoretical g(tau): limits (mu_x, mu_y, gamma1 + sigma_x^2,
/// gamma2 + sigma_y^2, gamma3 + sigma_xy) interleaved with the n-scaled
/// asymptotic variances.
GVector g_theoretical(const TauParams& params);

/// Plug-in g from theta-level data: closed-form MLEs with the variance
/// formulas evaluated at the estimates; overall moments are
/// gamma_hat + between.
GVector g_plugin(std::span<const ThetaRealization> thetas, int nu);

/// Plug-in g from an interval sample: overall moments from the chosen
/// internal model; the within components entering the variance formulas
/// are the within parts of those moments, so classical data reduces to
/// the purely between expressions.
GVector g_plugin(const BivariateIntervalSample& sample, InternalModel model, int nu);

/// AsymptoticReport evaluated at plug-in estimates. No domain
/// validation: zero within estimates (classical data) are fine, and rho
/// only enters through sigma_xy_hat.
AsymptoticReport plugin_asymptotic_variances(const BetweenEstimates& between,
                                             const WithinEstimates& within, long n);

/// Wald confidence half-width, estimate +/- z * sqrt(var).
double wald_halfwidth(double variance, double z = 1.959963984540054);

} // namespace symcov

#endif // SYMCOV_ASYMPTOTICS_HPP
