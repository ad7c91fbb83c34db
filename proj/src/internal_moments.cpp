#include "symcov/internal_moments.hpp"

#include <cmath>

namespace symcov {

bool ThetaRealization::is_valid(double rel_tol) const noexcept {
    if (!(theta2_x >= 0.0) || !(theta2_y >= 0.0)) return false;
    double prod = theta2_x * theta2_y;
    double slack = rel_tol * std::max(prod, 1e-300);
    return theta2_xy * theta2_xy <= prod + slack;
}

ThetaRealization realize_uniform(const BivariateIntervalObs& obs) {
    double wx = obs.x.width();
    double wy = obs.y.width();
    return {obs.x.midpoint(), obs.y.midpoint(),
            wx * wx / 12.0, wy * wy / 12.0, wx * wy / 12.0};
}

ThetaRealization realize_triangular(const BivariateIntervalObs& obs) {
    double wx = obs.x.width();
    double wy = obs.y.width();
    return {obs.x.midpoint(), obs.y.midpoint(),
            wx * wx / 24.0, wy * wy / 24.0, wx * wy / 24.0};
}

ThetaRealization realize_pert(const BivariateIntervalObs& obs) {
    double c = obs.x.lower(), d = obs.x.upper();
    double a = obs.y.lower(), b = obs.y.upper();
    double mean_x = (c + 4.0 * obs.resolved_mode_x() + d) / 6.0;
    double mean_y = (a + 4.0 * obs.resolved_mode_y() + b) / 6.0;
    return {mean_x, mean_y,
            (mean_x - c) * (d - mean_x) / 7.0,
            (mean_y - a) * (b - mean_y) / 7.0,
            ((mean_x - c) * (b - mean_y) + (mean_y - a) * (d - mean_x)) / 14.0};
}

ThetaRealization realize(const BivariateIntervalObs& obs, InternalModel model) {
    switch (model) {
        case InternalModel::Uniform: return realize_uniform(obs);
        case InternalModel::Triangular: return realize_triangular(obs);
        case InternalModel::Pert: return realize_pert(obs);
    }
    fail(Errc::invalid_params, "unknown internal model");
}

std::vector<ThetaRealization> realize_all(const BivariateIntervalSample& sample,
                                          InternalModel model) {
    std::vector<ThetaRealization> out;
    out.reserve(sample.size());
    for (const auto& obs : sample) out.push_back(realize(obs, model));
    return out;
}

} // namespace symcov
