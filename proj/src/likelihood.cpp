#include "symcov/likelihood.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace symcov {

namespace {

constexpr double kBoundaryRelTol = 1e-12;

enum class Support { Interior, Boundary, Exterior };

Support classify_theta2(double t2x, double t2y, double t2xy) {
    if (t2x < 0.0 || t2y < 0.0) return Support::Exterior;
    double prod = t2x * t2y;
    double det = prod - t2xy * t2xy;
    double slack = kBoundaryRelTol * std::max(prod, 1e-300);
    if (t2x > 0.0 && t2y > 0.0 && det > slack) return Support::Interior;
    if (det < -slack) return Support::Exterior;
    return Support::Boundary;
}

void require_interior(std::span<const ThetaRealization> thetas) {
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const auto& t = thetas[i];
        switch (classify_theta2(t.theta2_x, t.theta2_y, t.theta2_xy)) {
            case Support::Interior:
                break;
            case Support::Boundary: {
                std::ostringstream msg;
                msg << "observation " << (i + 1)
                    << ": variation triple on the Wishart support boundary "
                       "(classical or interval-realized data); the log-likelihood "
                       "needs strictly interior theta2";
                fail(Errc::degenerate_theta, msg.str());
            }
            case Support::Exterior: {
                std::ostringstream msg;
                msg << "observation " << (i + 1) << ": variation triple ("
                    << t.theta2_x << ", " << t.theta2_y << ", " << t.theta2_xy
                    << ") outside the Wishart support";
                fail(Errc::out_of_support, msg.str());
            }
        }
    }
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

} // namespace

double bvn_logpdf(double theta1_x, double theta1_y, const TauParams& params) {
    double ax = (theta1_x - params.mu_x()) / params.sigma_x();
    double ay = (theta1_y - params.mu_y()) / params.sigma_y();
    double rho = params.rho();
    double one_m_r2 = 1.0 - rho * rho;
    double quad = (ax * ax + ay * ay - 2.0 * rho * ax * ay) / one_m_r2;
    return -std::log(2.0 * std::numbers::pi) - std::log(params.sigma_x()) -
           std::log(params.sigma_y()) - 0.5 * std::log(one_m_r2) - 0.5 * quad;
}

double wishart_logpdf(double theta2_x, double theta2_y, double theta2_xy,
                      const TauParams& params) {
    if (classify_theta2(theta2_x, theta2_y, theta2_xy) != Support::Interior) {
        std::ostringstream msg;
        msg << "variation triple (" << theta2_x << ", " << theta2_y << ", " << theta2_xy
            << ") not strictly inside the Wishart support";
        fail(Errc::out_of_support, msg.str());
    }
    double nu = static_cast<double>(params.nu());
    double g = params.scale_det();
    double det = theta2_x * theta2_y - theta2_xy * theta2_xy;
    double trace_term = (params.gamma2() * theta2_x + params.gamma1() * theta2_y -
                         2.0 * params.gamma3() * theta2_xy) /
                        (2.0 * g);
    double log_norm = nu * std::numbers::ln2 + 0.5 * std::log(std::numbers::pi) +
                      std::lgamma(nu / 2.0) + std::lgamma((nu - 1.0) / 2.0);
    return -0.5 * nu * std::log(g) + 0.5 * (nu - 3.0) * std::log(det) - trace_term - log_norm;
}

double loglik(std::span<const ThetaRealization> thetas, const TauParams& params,
              Reduction reduction) {
    if (thetas.empty()) fail(Errc::empty_sample, "loglik needs at least 1 realization");
    require_interior(thetas);

    if (reduction == Reduction::Serial) {
        double total = 0.0;
        for (const auto& t : thetas) {
            total += bvn_logpdf(t.theta1_x, t.theta1_y, params);
            total += wishart_logpdf(t.theta2_x, t.theta2_y, t.theta2_xy, params);
        }
        return total;
    }

    std::vector<double> terms;
    terms.reserve(thetas.size());
    for (const auto& t : thetas) {
        terms.push_back(bvn_logpdf(t.theta1_x, t.theta1_y, params) +
                        wishart_logpdf(t.theta2_x, t.theta2_y, t.theta2_xy, params));
    }
    return pairwise_sum(terms);
}

GradientVector loglik_gradient(std::span<const ThetaRealization> thetas,
                               const TauParams& params) {
    if (thetas.empty()) fail(Errc::empty_sample, "loglik_gradient needs at least 1 realization");
    require_interior(thetas);

    const double n = static_cast<double>(thetas.size());
    const double nu = static_cast<double>(params.nu());
    const double sx = params.sigma_x();
    const double sy = params.sigma_y();
    const double rho = params.rho();
    const double g1 = params.gamma1();
    const double g2 = params.gamma2();
    const double g3 = params.gamma3();
    const double g = params.scale_det();

    double s1x = 0.0, s1y = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    for (const auto& t : thetas) {
        double dx = t.theta1_x - params.mu_x();
        double dy = t.theta1_y - params.mu_y();
        s1x += dx;
        s1y += dy;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
        t1 += t.theta2_x;
        t2 += t.theta2_y;
        t3 += t.theta2_xy;
    }

    const double one_m_r2 = 1.0 - rho * rho;
    const double g_sq = g * g;

    GradientVector grad;
    grad.d_mu_x = (s1x / (sx * sx) - rho * s1y / (sx * sy)) / one_m_r2;
    grad.d_mu_y = (s1y / (sy * sy) - rho * s1x / (sx * sy)) / one_m_r2;
    grad.d_sigma_x = -n / sx + (2.0 * sxx / (sx * sx * sx) -
                                2.0 * rho * sxy / (sx * sx * sy)) /
                                   (2.0 * one_m_r2);
    grad.d_sigma_y = -n / sy + (2.0 * syy / (sy * sy * sy) -
                                2.0 * rho * sxy / (sx * sy * sy)) /
                                   (2.0 * one_m_r2);
    grad.d_rho = n * rho / one_m_r2 -
                 rho / (one_m_r2 * one_m_r2) * (sxx / (sx * sx) + syy / (sy * sy)) +
                 (1.0 + rho * rho) / (one_m_r2 * one_m_r2) * sxy / (sx * sy);
    grad.d_gamma1 = -n * nu * g2 / (2.0 * g) + g2 * g2 * t1 / (2.0 * g_sq) -
                    (g - g1 * g2) * t2 / (2.0 * g_sq) - g2 * g3 * t3 / g_sq;
    grad.d_gamma2 = -n * nu * g1 / (2.0 * g) - (g - g1 * g2) * t1 / (2.0 * g_sq) +
                    g1 * g1 * t2 / (2.0 * g_sq) - g1 * g3 * t3 / g_sq;
    grad.d_gamma3 = n * nu * g3 / g - g2 * g3 * t1 / g_sq - g1 * g3 * t2 / g_sq +
                    (g + 2.0 * g3 * g3) * t3 / g_sq;
    return grad;
}

GradientVector gradient_in_variance_coords(const GradientVector& grad,
                                           const TauParams& params) {
    GradientVector out = grad;
    out.d_sigma_x = grad.d_sigma_x / (2.0 * params.sigma_x());
    out.d_sigma_y = grad.d_sigma_y / (2.0 * params.sigma_y());
    return out;
}

namespace {

// Rebuilds a parameter vector with one coordinate of
// (mu_x, mu_y, sigma_x, sigma_y, rho, gamma1, gamma2, gamma3) shifted.
TauParams shifted(const TauParams& p, int index, double delta) {
    double v[8] = {p.mu_x(), p.mu_y(), p.sigma_x(), p.sigma_y(),
                   p.rho(), p.gamma1(), p.gamma2(), p.gamma3()};
    v[index] += delta;
    return TauParams(v[0], v[1], v[2] * v[2], v[3] * v[3], v[4], v[5], v[6], v[7], p.nu());
}

bool shift_valid(const TauParams& p, int index, double delta) {
    try {
        shifted(p, index, delta);
        return true;
    } catch (const Error&) {
        return false;
    }
}

} // namespace

GradientVector loglik_gradient_fd(std::span<const ThetaRealization> thetas,
                                  const TauParams& params, double rel_step) {
    double base[8] = {params.mu_x(), params.mu_y(), params.sigma_x(), params.sigma_y(),
                      params.rho(), params.gamma1(), params.gamma2(), params.gamma3()};
    std::array<double, 8> out{};
    for (int i = 0; i < 8; ++i) {
        double h = rel_step * std::max(std::abs(base[i]), 1.0);
        while (!(shift_valid(params, i, h) && shift_valid(params, i, -h))) {
            h /= 2.0;
            if (h < 1e-300) fail(Errc::invalid_params, "cannot step inside the parameter domain");
        }
        TauParams plus = shifted(params, i, h);
        TauParams minus = shifted(params, i, -h);
        // actual applied step, to cancel representation error in base + h
        double applied[8] = {plus.mu_x() - minus.mu_x(),
                             plus.mu_y() - minus.mu_y(),
                             plus.sigma_x() - minus.sigma_x(),
                             plus.sigma_y() - minus.sigma_y(),
                             plus.rho() - minus.rho(),
                             plus.gamma1() - minus.gamma1(),
                             plus.gamma2() - minus.gamma2(),
                             plus.gamma3() - minus.gamma3()};
        out[i] = (loglik(thetas, plus) - loglik(thetas, minus)) / applied[i];
    }
    GradientVector grad;
    grad.d_mu_x = out[0];
    grad.d_mu_y = out[1];
    grad.d_sigma_x = out[2];
    grad.d_sigma_y = out[3];
    grad.d_rho = out[4];
    grad.d_gamma1 = out[5];
    grad.d_gamma2 = out[6];
    grad.d_gamma3 = out[7];
    return grad;
}

} // namespace symcov
