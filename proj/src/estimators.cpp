#include "symcov/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace symcov {

namespace {

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

BetweenEstimates between_mles(std::span<const ThetaRealization> thetas) {
    const std::size_t n = thetas.size();
    if (n < 2) fail(Errc::empty_sample, "between_mles needs at least 2 realizations");

    BetweenEstimates est;
    double sx = 0.0, sy = 0.0;
    for (const auto& t : thetas) {
        sx += t.theta1_x;
        sy += t.theta1_y;
    }
    est.mu_x_hat = sx / static_cast<double>(n);
    est.mu_y_hat = sy / static_cast<double>(n);

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& t : thetas) {
        double dx = t.theta1_x - est.mu_x_hat;
        double dy = t.theta1_y - est.mu_y_hat;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    est.sigma2_x_hat = sxx / static_cast<double>(n);
    est.sigma2_y_hat = syy / static_cast<double>(n);
    est.sigma_xy_hat = sxy / static_cast<double>(n);

    if (sxx > 0.0 && syy > 0.0) {
        est.rho_hat = sxy / std::sqrt(sxx * syy);
        // guard against rounding pushing the Pearson ratio past +/-1
        est.rho_hat = std::clamp(est.rho_hat, -1.0, 1.0);
        est.rho_defined = true;
    } else {
        est.rho_hat = std::numeric_limits<double>::quiet_NaN();
        est.rho_defined = false;
    }
    return est;
}

WithinEstimates within_mles(std::span<const ThetaRealization> thetas, int nu) {
    if (thetas.empty()) fail(Errc::empty_sample, "within_mles needs at least 1 realization");
    if (nu <= 2) fail(Errc::invalid_params, "nu must be > 2");

    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (const auto& t : thetas) {
        s1 += t.theta2_x;
        s2 += t.theta2_y;
        s3 += t.theta2_xy;
    }
    double denom = static_cast<double>(thetas.size()) * static_cast<double>(nu);
    return {s1 / denom, s2 / denom, s3 / denom, nu};
}

OverallDecomposition overall_decomposition(const BivariateIntervalSample& sample,
                                           InternalModel model, int nu) {
    if (nu <= 2) fail(Errc::invalid_params, "nu must be > 2");

    auto thetas = realize_all(sample, model);
    OverallDecomposition dec;
    dec.between = between_mles(thetas);

    // Within term: average of the theta2 realizations. The uniform case
    // carries the nu-divisor estimator (native divisor 12 rescaled to nu);
    // triangular and Pert keep their native divisors 24 and 7/14.
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (const auto& t : thetas) {
        s1 += t.theta2_x;
        s2 += t.theta2_y;
        s3 += t.theta2_xy;
    }
    double inv_n = 1.0 / static_cast<double>(thetas.size());
    double scale = (model == InternalModel::Uniform) ? 12.0 / static_cast<double>(nu) : 1.0;
    dec.within_x = scale * s1 * inv_n;
    dec.within_y = scale * s2 * inv_n;
    dec.within_xy = scale * s3 * inv_n;

    dec.total.mean_x = dec.between.mu_x_hat;
    dec.total.mean_y = dec.between.mu_y_hat;
    dec.total.var_x = dec.within_x + dec.between.sigma2_x_hat;
    dec.total.var_y = dec.within_y + dec.between.sigma2_y_hat;
    dec.total.cov_xy = dec.within_xy + dec.between.sigma_xy_hat;
    return dec;
}

OverallMoments overall_estimates(const BivariateIntervalSample& sample,
                                 InternalModel model, int nu) {
    return overall_decomposition(sample, model, nu).total;
}

OverallMoments empirical_stats(const BivariateIntervalSample& sample) {
    const double n = static_cast<double>(sample.size());

    double sum_y = 0.0, sum_x = 0.0;
    for (const auto& obs : sample) {
        sum_y += obs.y.lower() + obs.y.upper();
        sum_x += obs.x.lower() + obs.x.upper();
    }
    OverallMoments out;
    out.mean_y = sum_y / (2.0 * n);
    out.mean_x = sum_x / (2.0 * n);

    double qy = 0.0, qx = 0.0, qxy = 0.0;
    for (const auto& obs : sample) {
        double a = obs.y.lower(), b = obs.y.upper();
        double c = obs.x.lower(), d = obs.x.upper();
        qy += a * a + a * b + b * b;
        qx += c * c + c * d + d * d;
        double p = a - out.mean_y, q = b - out.mean_y;
        double u = c - out.mean_x, v = d - out.mean_x;
        qxy += 2.0 * p * u + p * v + q * u + 2.0 * q * v;
    }
    out.var_y = qy / (3.0 * n) - out.mean_y * out.mean_y;
    out.var_x = qx / (3.0 * n) - out.mean_x * out.mean_x;
    out.cov_xy = qxy / (6.0 * n);
    return out;
}

OverallMoments overall_expanded_uniform(const BivariateIntervalSample& sample) {
    const double n = static_cast<double>(sample.size());

    double sum_y = 0.0, sum_x = 0.0;
    for (const auto& obs : sample) {
        sum_y += obs.y.midpoint();
        sum_x += obs.x.midpoint();
    }
    OverallMoments out;
    out.mean_y = sum_y / n;
    out.mean_x = sum_x / n;

    double vy = 0.0, vx = 0.0, cxy = 0.0;
    for (const auto& obs : sample) {
        double p = obs.y.lower() - out.mean_y, q = obs.y.upper() - out.mean_y;
        double u = obs.x.lower() - out.mean_x, v = obs.x.upper() - out.mean_x;
        vy += p * p + p * q + q * q;
        vx += u * u + u * v + v * v;
        cxy += 2.0 * p * u + p * v + q * u + 2.0 * q * v;
    }
    out.var_y = vy / (3.0 * n);
    out.var_x = vx / (3.0 * n);
    out.cov_xy = cxy / (6.0 * n);
    return out;
}

double check_empirical_identity(const BivariateIntervalSample& sample) {
    OverallMoments mle = overall_estimates(sample, InternalModel::Uniform, 12);
    OverallMoments emp = empirical_stats(sample);
    OverallMoments exp = overall_expanded_uniform(sample);

    auto rel = [](double a, double b) {
        return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
    };
    double worst = 0.0;
    for (auto [a, b] : {std::pair{mle.var_x, emp.var_x}, {mle.var_y, emp.var_y},
                        {mle.cov_xy, emp.cov_xy}, {mle.var_x, exp.var_x},
                        {mle.var_y, exp.var_y}, {mle.cov_xy, exp.cov_xy}}) {
        worst = std::max(worst, rel(a, b));
    }
    return worst;
}

CenterRangeStats center_range_stats(const BivariateIntervalSample& sample) {
    const std::size_t n = sample.size();
    if (n < 2) fail(Errc::empty_sample, "center_range_stats needs n >= 2");

    std::vector<double> xc(n), xr(n), yc(n), yr(n);
    for (std::size_t i = 0; i < n; ++i) {
        xc[i] = sample[i].x.midpoint();
        xr[i] = sample[i].x.width();
        yc[i] = sample[i].y.midpoint();
        yr[i] = sample[i].y.width();
    }

    auto var_n = [](std::span<const double> v) {
        double m = mean_of(v);
        double s = 0.0;
        for (double x : v) s += (x - m) * (x - m);
        return s / static_cast<double>(v.size());
    };
    auto cov_n = [](std::span<const double> a, std::span<const double> b) {
        double ma = mean_of(a), mb = mean_of(b);
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
        return s / static_cast<double>(a.size());
    };

    OverallMoments symbolic = empirical_stats(sample);

    CenterRangeStats out;
    out.x.var_center = var_n(xc);
    out.x.var_range = var_n(xr);
    out.x.sum = out.x.var_center + out.x.var_range;
    out.x.symbolic = symbolic.var_x;

    out.y.var_center = var_n(yc);
    out.y.var_range = var_n(yr);
    out.y.sum = out.y.var_center + out.y.var_range;
    out.y.symbolic = symbolic.var_y;

    out.xy.cov_center = cov_n(yc, xc);
    out.xy.cov_range = cov_n(yr, xr);
    out.xy.sum = out.xy.cov_center + out.xy.cov_range;
    out.xy.symbolic = symbolic.cov_xy;
    return out;
}

} // namespace symcov
