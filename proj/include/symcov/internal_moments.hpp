#ifndef SYMCOV_INTERNAL_MOMENTS_HPP
#define SYMCOV_INTERNAL_MOMENTS_HPP

#include <vector>

#include "symcov/interval.hpp"

namespace symcov {

/// Realization of the latent internal parameters for one observation:
/// the internal mean pair (theta1_x, theta1_y) and the internal
/// variation triple (theta2_x, theta2_y, theta2_xy).
///
/// Valid realizations satisfy theta2_x >= 0, theta2_y >= 0 and
/// theta2_xy^2 <= theta2_x * theta2_y; realizations derived from
/// intervals sit on the boundary (equality), full Wishart draws in the
/// interior.
struct ThetaRealization {
    double theta1_x = 0.0;
    double theta1_y = 0.0;
    double theta2_x = 0.0;
    double theta2_y = 0.0;
    double theta2_xy = 0.0;

    /// Invariant check with a small relative slack for the boundary cases
    /// produced by interval realizations.
    bool is_valid(double rel_tol = 1e-12) const noexcept;
};

/// Uniform spread: midpoint means; variations (width^2)/12 and
/// (width_x * width_y)/12.
ThetaRealization realize_uniform(const BivariateIntervalObs& obs);

/// Triangular spread peaked at the midpoint: midpoint means; variations
/// as in the uniform case with divisor 24.
ThetaRealization realize_triangular(const BivariateIntervalObs& obs);

/// Pert spread with mode m (midpoint when absent): mean (lo + 4m + hi)/6;
/// variations (mean-lo)(hi-mean)/7 and the symmetrized cross term
/// [(mx-c)(b-my) + (my-a)(d-mx)]/14 with mx, my the Pert means.
ThetaRealization realize_pert(const BivariateIntervalObs& obs);

ThetaRealization realize(const BivariateIntervalObs& obs, InternalModel model);

std::vector<ThetaRealization> realize_all(const BivariateIntervalSample& sample,
                                          InternalModel model);

} // namespace symcov

#endif // SYMCOV_INTERNAL_MOMENTS_HPP
