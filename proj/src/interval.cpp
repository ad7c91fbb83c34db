#include "symcov/interval.hpp"

#include <cmath>
#include <sstream>

namespace symcov {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << what << " must be finite, got " << v;
        fail(Errc::non_finite, msg.str());
    }
}

} // namespace

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_interval: return "invalid_interval";
        case Errc::non_finite: return "non_finite";
        case Errc::mode_out_of_range: return "mode_out_of_range";
        case Errc::empty_sample: return "empty_sample";
        case Errc::invalid_params: return "invalid_params";
        case Errc::parse_error: return "parse_error";
        case Errc::config_error: return "config_error";
        case Errc::ragged_rows: return "ragged_rows";
        case Errc::io_error: return "io_error";
        case Errc::zero_variance: return "zero_variance";
        case Errc::out_of_support: return "out_of_support";
        case Errc::degenerate_theta: return "degenerate_theta";
        case Errc::not_symmetric: return "not_symmetric";
        case Errc::no_convergence: return "no_convergence";
        case Errc::too_many_vertices: return "too_many_vertices";
    }
    return "unknown";
}

Interval::Interval(double lower, double upper) : lower_(lower), upper_(upper) {
    require_finite(lower, "interval lower endpoint");
    require_finite(upper, "interval upper endpoint");
    if (lower > upper) {
        std::ostringstream msg;
        msg << "interval lower endpoint " << lower << " exceeds upper endpoint " << upper;
        fail(Errc::invalid_interval, msg.str());
    }
}

BivariateIntervalObs::BivariateIntervalObs(Interval x_in, Interval y_in,
                                           std::optional<double> mode_x_in,
                                           std::optional<double> mode_y_in)
    : x(x_in), y(y_in), mode_x(mode_x_in), mode_y(mode_y_in) {
    if (mode_x) {
        require_finite(*mode_x, "mode_x");
        if (!x.contains(*mode_x)) {
            std::ostringstream msg;
            msg << "mode_x " << *mode_x << " outside [" << x.lower() << ", " << x.upper() << "]";
            fail(Errc::mode_out_of_range, msg.str());
        }
    }
    if (mode_y) {
        require_finite(*mode_y, "mode_y");
        if (!y.contains(*mode_y)) {
            std::ostringstream msg;
            msg << "mode_y " << *mode_y << " outside [" << y.lower() << ", " << y.upper() << "]";
            fail(Errc::mode_out_of_range, msg.str());
        }
    }
}

BivariateIntervalSample::BivariateIntervalSample(std::vector<BivariateIntervalObs> observations)
    : obs_(std::move(observations)) {
    if (obs_.size() < 2) {
        std::ostringstream msg;
        msg << "sample needs at least 2 observations, got " << obs_.size();
        fail(Errc::empty_sample, msg.str());
    }
}

const char* internal_model_name(InternalModel model) noexcept {
    switch (model) {
        case InternalModel::Uniform: return "uniform";
        case InternalModel::Triangular: return "triangular";
        case InternalModel::Pert: return "pert";
    }
    return "unknown";
}

InternalModel internal_model_from_name(const std::string& name) {
    if (name == "uniform") return InternalModel::Uniform;
    if (name == "triangular") return InternalModel::Triangular;
    if (name == "pert") return InternalModel::Pert;
    fail(Errc::config_error, "unknown internal model '" + name +
                                 "' (expected uniform, triangular, or pert)");
}

TauParams::TauParams(double mu_x, double mu_y, double sigma2_x, double sigma2_y,
                     double rho, double gamma1, double gamma2, double gamma3, int nu)
    : mu_x_(mu_x), mu_y_(mu_y), sigma2_x_(sigma2_x), sigma2_y_(sigma2_y),
      rho_(rho), gamma1_(gamma1), gamma2_(gamma2), gamma3_(gamma3), nu_(nu) {
    require_finite(mu_x, "mu_x");
    require_finite(mu_y, "mu_y");
    require_finite(sigma2_x, "sigma2_x");
    require_finite(sigma2_y, "sigma2_y");
    require_finite(rho, "rho");
    require_finite(gamma1, "gamma1");
    require_finite(gamma2, "gamma2");
    require_finite(gamma3, "gamma3");
    if (sigma2_x <= 0.0) fail(Errc::invalid_params, "sigma2_x must be > 0");
    if (sigma2_y <= 0.0) fail(Errc::invalid_params, "sigma2_y must be > 0");
    if (!(rho > -1.0 && rho < 1.0)) fail(Errc::invalid_params, "rho must lie in (-1, 1)");
    if (gamma1 <= 0.0) fail(Errc::invalid_params, "gamma1 must be > 0");
    if (gamma2 <= 0.0) fail(Errc::invalid_params, "gamma2 must be > 0");
    if (gamma1 * gamma2 - gamma3 * gamma3 <= 0.0) {
        fail(Errc::invalid_params,
             "gamma1*gamma2 - gamma3^2 must be > 0 (Wishart scale not positive definite)");
    }
    if (nu <= 2) fail(Errc::invalid_params, "nu must be an integer > 2");
}

TauParams TauParams::from_sigma_xy(double mu_x, double mu_y, double sigma2_x,
                                   double sigma2_y, double sigma_xy,
                                   double gamma1, double gamma2, double gamma3, int nu) {
    if (sigma2_x <= 0.0 || sigma2_y <= 0.0) {
        fail(Errc::invalid_params, "variances must be > 0");
    }
    double rho = sigma_xy / std::sqrt(sigma2_x * sigma2_y);
    return TauParams(mu_x, mu_y, sigma2_x, sigma2_y, rho, gamma1, gamma2, gamma3, nu);
}

double TauParams::sigma_x() const noexcept { return std::sqrt(sigma2_x_); }
double TauParams::sigma_y() const noexcept { return std::sqrt(sigma2_y_); }
double TauParams::sigma_xy() const noexcept { return rho_ * sigma_x() * sigma_y(); }
double TauParams::scale_det() const noexcept { return gamma1_ * gamma2_ - gamma3_ * gamma3_; }

BivariateIntervalSample validate_sample(std::span<const std::vector<double>> rows) {
    std::vector<BivariateIntervalObs> obs;
    obs.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != 4 && row.size() != 6) {
            std::ostringstream msg;
            msg << "row " << (i + 1) << " has " << row.size()
                << " values, expected 4 (c,d,a,b) or 6 (c,d,a,b,mode_x,mode_y)";
            fail(Errc::ragged_rows, msg.str());
        }
        try {
            std::optional<double> mx, my;
            if (row.size() == 6) {
                mx = row[4];
                my = row[5];
            }
            obs.emplace_back(Interval(row[0], row[1]), Interval(row[2], row[3]), mx, my);
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << "row " << (i + 1) << ": " << e.what();
            fail(e.code(), msg.str());
        }
    }
    return BivariateIntervalSample(std::move(obs));
}

} // namespace symcov
