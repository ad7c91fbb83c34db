#ifndef SYMCOV_ESTIMATORS_HPP
#define SYMCOV_ESTIMATORS_HPP

#include <span>

#include "symcov/internal_moments.hpp"
#include "symcov/interval.hpp"

namespace symcov {

/// MLEs of the between-observation parameters from internal means.
/// All variances use divisor n. rho_hat is the Pearson ratio and is NaN
/// (with rho_defined = false) when either variance is zero.
struct BetweenEstimates {
    double mu_x_hat = 0.0;
    double mu_y_hat = 0.0;
    double sigma2_x_hat = 0.0;
    double sigma2_y_hat = 0.0;
    double sigma_xy_hat = 0.0;
    double rho_hat = 0.0;
    bool rho_defined = false;
};

/// MLEs of the within-observation Wishart scale: averages of the
/// theta2 components divided by nu.
struct WithinEstimates {
    double gamma1_hat = 0.0;
    double gamma2_hat = 0.0;
    double gamma3_hat = 0.0;
    int nu = 0;
};

/// Overall (within + between) means, variances, and covariance of the
/// de-aggregated variables.
struct OverallMoments {
    double mean_x = 0.0;
    double mean_y = 0.0;
    double var_x = 0.0;
    double var_y = 0.0;
    double cov_xy = 0.0;
};

/// Overall moments split into their within and between parts.
struct OverallDecomposition {
    OverallMoments total;
    double within_x = 0.0;
    double within_y = 0.0;
    double within_xy = 0.0;
    BetweenEstimates between;
};

/// Per-variable center/range comparison reproducing the classical
/// center+range treatment next to the symbolic statistics. Centers are
/// interval midpoints, ranges the full widths.
struct CenterRangeStats {
    struct VarRow {
        double var_center = 0.0;
        double var_range = 0.0;
        double sum = 0.0;
        double symbolic = 0.0;
    };
    struct CovRow {
        double cov_center = 0.0;
        double cov_range = 0.0;
        double sum = 0.0;
        double symbolic = 0.0;
    };
    VarRow x;
    VarRow y;
    CovRow xy;
};

BetweenEstimates between_mles(std::span<const ThetaRealization> thetas);

WithinEstimates within_mles(std::span<const ThetaRealization> thetas, int nu);

OverallDecomposition overall_decomposition(const BivariateIntervalSample& sample,
                                           InternalModel model, int nu);

OverallMoments overall_estimates(const BivariateIntervalSample& sample,
                                 InternalModel model, int nu);

/// Empirical mean/variance/covariance of interval data under the uniform
/// spread assumption (the moment-based forms the MLEs reduce to at
/// nu = 12).
OverallMoments empirical_stats(const BivariateIntervalSample& sample);

/// Uniform-model overall variances/covariance in their expanded,
/// mean-centered form (the nu = 12 algebraic rewrite); an independent
/// route used by the identity check below. Means equal the midpoint
/// means.
OverallMoments overall_expanded_uniform(const BivariateIntervalSample& sample);

/// Max relative discrepancy (denominator floored at 1) over
/// {var_x, var_y, cov_xy} between overall_estimates(Uniform, nu=12),
/// empirical_stats, and the expanded forms. Zero in exact arithmetic.
double check_empirical_identity(const BivariateIntervalSample& sample);

CenterRangeStats center_range_stats(const BivariateIntervalSample& sample);

} // namespace symcov

#endif // SYMCOV_ESTIMATORS_HPP
