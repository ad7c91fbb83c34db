#ifndef SYMCOV_SIMULATOR_HPP
#define SYMCOV_SIMULATOR_HPP

#include <cstdint>
#include <vector>

#include "symcov/asymptotics.hpp"
#include "symcov/interval.hpp"
#include "symcov/rng.hpp"

namespace symcov {

/// Whether replications are generated as latent theta data (internal
/// means + full Wishart variation triples) or as interval samples built
/// from centers and Wishart-diagonal squared ranges.
///
/// Theta is the default: the interval recipe squares away the sign of
/// the within covariance (its theta2_xy is a product of ranges, hence
/// never negative), so only theta-level data recovers negative gamma3.
enum class GenerationLevel {
    Theta,
    Interval,
};

struct StudyConfig {
    TauParams params;
    std::vector<long> sample_sizes;
    long replications = 1;
    std::uint64_t seed = 0;
    GenerationLevel level = GenerationLevel::Theta;

    void validate() const;
};

struct StudyCell {
    double mean = 0.0;
    double sd = 0.0;
};

/// Per sample size, the mean and SD over replications of every GVector
/// component, plus the theoretical vector they estimate.
struct StudyReport {
    std::vector<long> sample_sizes;
    std::vector<std::array<StudyCell, 10>> cells; // one entry per sample size
    GVector theoretical{};
};

/// One draw from N2((mu_x, mu_y), [[sx2, sxy], [sxy, sy2]]) via the
/// lower-triangular factor of the covariance.
std::pair<double, double> sample_bvn_pair(const TauParams& params, Rng& rng);

/// One bivariate Wishart draw with integer nu >= 2: the sum of nu outer
/// products of N2(0, Gamma) vectors. Returns (w11, w22, w12).
std::array<double, 3> sample_wishart(int nu, double gamma1, double gamma2,
                                     double gamma3, Rng& rng);

/// n latent realizations: theta1 from the bivariate normal, theta2 a
/// full Wishart draw (so E(theta2) = nu * Gamma).
std::vector<ThetaRealization> generate_theta_sample(long n, const TauParams& params,
                                                    Rng& rng);

/// n intervals: centers from the bivariate normal; widths are the square
/// roots of the Wishart diagonal, so the uniform realization of each
/// interval recovers theta2 = diagonal/12.
BivariateIntervalSample generate_interval_sample(long n, const TauParams& params,
                                                 Rng& rng);

/// Runs the full replication study. Each (sample size, replication)
/// pair draws from its own stream derived from the seed, so the report
/// is a pure function of the config and independent of scheduling;
/// threads > 1 executes replications concurrently with indexed writes.
StudyReport run_study(const StudyConfig& config, int threads = 1);

} // namespace symcov

#endif // SYMCOV_SIMULATOR_HPP
