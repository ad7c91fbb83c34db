#include "symcov/asymptotics.hpp"

#include <cmath>

namespace symcov {

namespace {

// n-scaled plug-in variances shared by both g_plugin overloads.
// w1..w3 are the within components the overall moments add to the
// between terms; sig2x etc. are the between estimates.
// (1 + rho^2) sigma_x^2 sigma_y^2 is expanded as
// sigma_x^2 sigma_y^2 + sigma_xy^2 so zero-variance data stays finite.
GVector assemble_g(double mu_x, double mu_y, double s2_x, double s2_y, double s_xy,
                   double sig2x, double sig2y, double sigxy,
                   double w1, double w2, double w3, double nu) {
    GVector g;
    g[0] = mu_x;
    g[1] = sig2x;
    g[2] = mu_y;
    g[3] = sig2y;
    g[4] = s2_x;
    g[5] = 2.0 * (w1 * w1 + nu * sig2x * sig2x) / nu;
    g[6] = s2_y;
    g[7] = 2.0 * (w2 * w2 + nu * sig2y * sig2y) / nu;
    g[8] = s_xy;
    g[9] = (w1 * w2 + w3 * w3) / nu + sig2x * sig2y + sigxy * sigxy;
    return g;
}

} // namespace

std::array<const char*, 10> g_component_names() noexcept {
    return {"mu_x_hat", "n_var_mu_x", "mu_y_hat", "n_var_mu_y", "s2_x",
            "n_var_s2_x", "s2_y", "n_var_s2_y", "s_xy", "n_var_s_xy"};
}

AsymptoticReport asymptotic_variances(const TauParams& p, long n) {
    if (n < 1) fail(Errc::invalid_params, "n must be >= 1");
    const double nd = static_cast<double>(n);
    const double nu = static_cast<double>(p.nu());
    const double s2x = p.sigma2_x(), s2y = p.sigma2_y();
    const double g1 = p.gamma1(), g2 = p.gamma2(), g3 = p.gamma3();
    const double rho2 = p.rho() * p.rho();

    AsymptoticReport r;
    r.var_mu_x = s2x / nd;
    r.var_mu_y = s2y / nd;
    r.var_sigma2_x = 2.0 * s2x * s2x / nd;
    r.var_sigma2_y = 2.0 * s2y * s2y / nd;
    r.var_sigma_xy = (1.0 + rho2) * s2x * s2y / nd;
    r.var_gamma1 = 2.0 * g1 * g1 / (nu * nd);
    r.var_gamma2 = 2.0 * g2 * g2 / (nu * nd);
    r.var_gamma3 = (g1 * g2 + g3 * g3) / (nu * nd);
    r.var_s2_x = 2.0 * (g1 * g1 + nu * s2x * s2x) / (nu * nd);
    r.var_s2_y = 2.0 * (g2 * g2 + nu * s2y * s2y) / (nu * nd);
    r.var_s_xy = ((g1 * g2 + g3 * g3) + nu * (1.0 + rho2) * s2x * s2y) / (nu * nd);
    return r;
}

GVector g_theoretical(const TauParams& p) {
    return assemble_g(p.mu_x(), p.mu_y(),
                      p.gamma1() + p.sigma2_x(),
                      p.gamma2() + p.sigma2_y(),
                      p.gamma3() + p.sigma_xy(),
                      p.sigma2_x(), p.sigma2_y(), p.sigma_xy(),
                      p.gamma1(), p.gamma2(), p.gamma3(),
                      static_cast<double>(p.nu()));
}

GVector g_plugin(std::span<const ThetaRealization> thetas, int nu) {
    BetweenEstimates b = between_mles(thetas);
    WithinEstimates w = within_mles(thetas, nu);
    return assemble_g(b.mu_x_hat, b.mu_y_hat,
                      w.gamma1_hat + b.sigma2_x_hat,
                      w.gamma2_hat + b.sigma2_y_hat,
                      w.gamma3_hat + b.sigma_xy_hat,
                      b.sigma2_x_hat, b.sigma2_y_hat, b.sigma_xy_hat,
                      w.gamma1_hat, w.gamma2_hat, w.gamma3_hat,
                      static_cast<double>(nu));
}

GVector g_plugin(const BivariateIntervalSample& sample, InternalModel model, int nu) {
    OverallDecomposition dec = overall_decomposition(sample, model, nu);
    const BetweenEstimates& b = dec.between;
    return assemble_g(b.mu_x_hat, b.mu_y_hat,
                      dec.total.var_x, dec.total.var_y, dec.total.cov_xy,
                      b.sigma2_x_hat, b.sigma2_y_hat, b.sigma_xy_hat,
                      dec.within_x, dec.within_y, dec.within_xy,
                      static_cast<double>(nu));
}

AsymptoticReport plugin_asymptotic_variances(const BetweenEstimates& b,
                                             const WithinEstimates& w, long n) {
    if (n < 1) fail(Errc::invalid_params, "n must be >= 1");
    const double nd = static_cast<double>(n);
    const double nu = static_cast<double>(w.nu);
    const double s2x = b.sigma2_x_hat, s2y = b.sigma2_y_hat, sxy = b.sigma_xy_hat;
    const double g1 = w.gamma1_hat, g2 = w.gamma2_hat, g3 = w.gamma3_hat;

    AsymptoticReport r;
    r.var_mu_x = s2x / nd;
    r.var_mu_y = s2y / nd;
    r.var_sigma2_x = 2.0 * s2x * s2x / nd;
    r.var_sigma2_y = 2.0 * s2y * s2y / nd;
    r.var_sigma_xy = (s2x * s2y + sxy * sxy) / nd;
    r.var_gamma1 = 2.0 * g1 * g1 / (nu * nd);
    r.var_gamma2 = 2.0 * g2 * g2 / (nu * nd);
    r.var_gamma3 = (g1 * g2 + g3 * g3) / (nu * nd);
    r.var_s2_x = 2.0 * (g1 * g1 + nu * s2x * s2x) / (nu * nd);
    r.var_s2_y = 2.0 * (g2 * g2 + nu * s2y * s2y) / (nu * nd);
    r.var_s_xy = ((g1 * g2 + g3 * g3) + nu * (s2x * s2y + sxy * sxy)) / (nu * nd);
    return r;
}

double wald_halfwidth(double variance, double z) {
    if (variance < 0.0) fail(Errc::invalid_params, "variance must be >= 0");
    return z * std::sqrt(variance);
}

} // namespace symcov
