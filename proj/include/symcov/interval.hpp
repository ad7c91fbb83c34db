#ifndef SYMCOV_INTERVAL_HPP
#define SYMCOV_INTERVAL_HPP

#include <optional>
#include <span>
#include <vector>

#include "symcov/errors.hpp"

namespace symcov {

/// A closed interval [lower, upper] with finite endpoints.
/// Degenerate intervals (lower == upper) are valid and represent
/// classical point data.
class Interval {
  public:
    Interval(double lower, double upper);

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

    double midpoint() const noexcept { return (lower_ + upper_) / 2.0; }
    double width() const noexcept { return upper_ - lower_; }
    bool degenerate() const noexcept { return lower_ == upper_; }
    bool contains(double v) const noexcept { return lower_ <= v && v <= upper_; }

  private:
    double lower_;
    double upper_;
};

/// One bivariate observation: x = [c, d], y = [a, b], plus the optional
/// most-likely values used by the Pert internal model. Absent modes
/// resolve to interval midpoints where a mode is needed.
struct BivariateIntervalObs {
    Interval x;
    Interval y;
    std::optional<double> mode_x;
    std::optional<double> mode_y;

    BivariateIntervalObs(Interval x_in, Interval y_in,
                         std::optional<double> mode_x_in = std::nullopt,
                         std::optional<double> mode_y_in = std::nullopt);

    double resolved_mode_x() const noexcept { return mode_x ? *mode_x : x.midpoint(); }
    double resolved_mode_y() const noexcept { return mode_y ? *mode_y : y.midpoint(); }
};

/// An ordered sample of n >= 2 bivariate interval observations.
class BivariateIntervalSample {
  public:
    explicit BivariateIntervalSample(std::vector<BivariateIntervalObs> observations);

    std::size_t size() const noexcept { return obs_.size(); }
    const BivariateIntervalObs& operator[](std::size_t i) const { return obs_[i]; }
    std::span<const BivariateIntervalObs> observations() const noexcept { return obs_; }

    auto begin() const noexcept { return obs_.begin(); }
    auto end() const noexcept { return obs_.end(); }

  private:
    std::vector<BivariateIntervalObs> obs_;
};

/// Assumed spread of the latent micro-data inside each interval.
/// Triangular fixes its peak at the interval midpoint; Pert takes the
/// per-observation modes (midpoints when absent).
enum class InternalModel {
    Uniform,
    Triangular,
    Pert,
};

const char* internal_model_name(InternalModel model) noexcept;
InternalModel internal_model_from_name(const std::string& name);

/// The eight model parameters plus the Wishart degrees of freedom.
/// Means and the between-observation covariance structure (mu_x, mu_y,
/// sigma2_x, sigma2_y, rho) parameterize the internal means; (gamma1,
/// gamma2, gamma3) is the Wishart scale for the internal variations.
class TauParams {
  public:
    TauParams(double mu_x, double mu_y, double sigma2_x, double sigma2_y,
              double rho, double gamma1, double gamma2, double gamma3,
              int nu = 12);

    /// Same parameterization but taking the between covariance sigma_xy
    /// instead of the correlation.
    static TauParams from_sigma_xy(double mu_x, double mu_y, double sigma2_x,
                                   double sigma2_y, double sigma_xy,
                                   double gamma1, double gamma2, double gamma3,
                                   int nu = 12);

    double mu_x() const noexcept { return mu_x_; }
    double mu_y() const noexcept { return mu_y_; }
    double sigma2_x() const noexcept { return sigma2_x_; }
    double sigma2_y() const noexcept { return sigma2_y_; }
    double rho() const noexcept { return rho_; }
    double gamma1() const noexcept { return gamma1_; }
    double gamma2() const noexcept { return gamma2_; }
    double gamma3() const noexcept { return gamma3_; }
    int nu() const noexcept { return nu_; }

    double sigma_x() const noexcept;
    double sigma_y() const noexcept;
    double sigma_xy() const noexcept;
    /// det of the Wishart scale matrix, gamma1*gamma2 - gamma3^2.
    double scale_det() const noexcept;

  private:
    double mu_x_, mu_y_;
    double sigma2_x_, sigma2_y_;
    double rho_;
    double gamma1_, gamma2_, gamma3_;
    int nu_;
};

/// Validates raw rows of 4 or 6 reals, (c, d, a, b [, mode_x, mode_y]),
/// into a sample. Ordering is preserved; endpoints are never reordered.
BivariateIntervalSample validate_sample(std::span<const std::vector<double>> rows);

} // namespace symcov

#endif // SYMCOV_INTERVAL_HPP
