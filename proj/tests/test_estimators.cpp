#include <doctest.h>

#include <cmath>

#include "symcov/estimators.hpp"
#include "symcov/io.hpp"
#include "symcov/rng.hpp"

using namespace symcov;

namespace {

std::vector<ThetaRealization> means_only(std::initializer_list<std::pair<double, double>> pts) {
    std::vector<ThetaRealization> out;
    for (auto [x, y] : pts) out.push_back({x, y, 1.0, 1.0, 0.0});
    return out;
}

BivariateIntervalSample random_sample(Rng& rng, std::size_t n, bool classical = false) {
    std::vector<BivariateIntervalObs> obs;
    for (std::size_t i = 0; i < n; ++i) {
        double cx = 20.0 * (rng.next_double() - 0.5);
        double cy = 20.0 * (rng.next_double() - 0.5);
        double wx = classical ? 0.0 : 6.0 * rng.next_double();
        double wy = classical ? 0.0 : 6.0 * rng.next_double();
        obs.emplace_back(Interval(cx - wx / 2, cx + wx / 2), Interval(cy - wy / 2, cy + wy / 2));
    }
    return BivariateIntervalSample(std::move(obs));
}

} // namespace

TEST_CASE("between MLEs on two perfectly correlated points") {
    auto est = between_mles(means_only({{0, 0}, {2, 2}}));
    CHECK(est.mu_x_hat == 1.0);
    CHECK(est.mu_y_hat == 1.0);
    CHECK(est.sigma2_x_hat == 1.0);
    CHECK(est.sigma2_y_hat == 1.0);
    CHECK(est.rho_defined);
    CHECK(est.rho_hat == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(est.sigma_xy_hat == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("between MLEs on the symmetric square are uncorrelated") {
    auto est = between_mles(means_only({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    CHECK(est.sigma_xy_hat == 0.0);
    CHECK(est.rho_hat == 0.0);
}

TEST_CASE("between MLEs reproduce the set-1 center statistics") {
    auto thetas = realize_all(builtin_dataset(1), InternalModel::Uniform);
    auto est = between_mles(thetas);
    // centers: x {2.5, 4.5, 3}, y {6.5, 7.5, 6.5}
    CHECK(est.sigma2_y_hat == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
    CHECK(est.sigma_xy_hat == doctest::Approx(7.0 / 18.0).epsilon(1e-14));
    CHECK(est.sigma2_x_hat == doctest::Approx(13.0 / 18.0).epsilon(1e-14));
    CHECK(est.rho_hat == doctest::Approx(est.sigma_xy_hat /
                                         std::sqrt(est.sigma2_x_hat * est.sigma2_y_hat))
                             .epsilon(1e-14));
}

TEST_CASE("zero between variance flags rho as undefined") {
    auto est = between_mles(means_only({{1, 0}, {1, 2}, {1, 4}}));
    CHECK_FALSE(est.rho_defined);
    CHECK(std::isnan(est.rho_hat));
    CHECK(est.sigma_xy_hat == 0.0);
    CHECK(est.sigma2_x_hat == 0.0);
    CHECK(est.sigma2_y_hat > 0.0);
}

TEST_CASE("rho always lies in [-1, 1]") {
    Rng rng(99);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<ThetaRealization> thetas;
        std::size_t n = 2 + static_cast<std::size_t>(rng.next_double() * 20);
        for (std::size_t i = 0; i < n; ++i) {
            thetas.push_back({rng.next_normal(), rng.next_normal(), 0, 0, 0});
        }
        auto est = between_mles(thetas);
        if (est.rho_defined) {
            CHECK(est.rho_hat >= -1.0);
            CHECK(est.rho_hat <= 1.0);
            CHECK(est.sigma_xy_hat ==
                  doctest::Approx(est.rho_hat *
                                  std::sqrt(est.sigma2_x_hat * est.sigma2_y_hat))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("within MLEs divide the theta2 averages by nu") {
    std::vector<ThetaRealization> thetas = {{0, 0, 3.0, 1.0, 0.5}, {0, 0, 3.0, 2.0, -0.5}};
    auto w = within_mles(thetas, 12);
    CHECK(w.gamma1_hat == doctest::Approx(3.0 / 12.0).epsilon(1e-15));
    CHECK(w.gamma2_hat == doctest::Approx(1.5 / 12.0).epsilon(1e-15));
    CHECK(w.gamma3_hat == 0.0);
    CHECK(w.nu == 12);
}

TEST_CASE("within MLEs of set 1 under the uniform model") {
    auto thetas = realize_all(builtin_dataset(1), InternalModel::Uniform);
    auto w = within_mles(thetas, 12);
    CHECK(w.gamma1_hat == doctest::Approx(50.0 / 432.0).epsilon(1e-14));
}

TEST_CASE("classical data has zero within estimates") {
    auto thetas = realize_all(builtin_dataset(4), InternalModel::Uniform);
    auto w = within_mles(thetas, 12);
    CHECK(w.gamma1_hat == 0.0);
    CHECK(w.gamma2_hat == 0.0);
    CHECK(w.gamma3_hat == 0.0);
}

TEST_CASE("within estimates satisfy the Cauchy-Schwarz bound") {
    Rng rng(123);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<ThetaRealization> thetas;
        std::size_t n = 1 + static_cast<std::size_t>(rng.next_double() * 10);
        for (std::size_t i = 0; i < n; ++i) {
            double a = rng.next_double() * 4;
            double b = rng.next_double() * 4;
            double r = 2.0 * rng.next_double() - 1.0;
            thetas.push_back({0, 0, a, b, r * std::sqrt(a * b)});
        }
        auto w = within_mles(thetas, 12);
        CHECK(w.gamma3_hat * w.gamma3_hat <=
              w.gamma1_hat * w.gamma2_hat * (1.0 + 1e-12) + 1e-300);
    }
}

TEST_CASE("overall estimates reproduce the built-in table values") {
    auto set1 = overall_estimates(builtin_dataset(1), InternalModel::Uniform, 12);
    CHECK(set1.var_y == doctest::Approx(0.750).epsilon(1e-12));
    CHECK(set1.cov_xy == doctest::Approx(22.0 / 18.0).epsilon(1e-12));

    auto set2 = overall_estimates(builtin_dataset(2), InternalModel::Uniform, 12);
    CHECK(set2.var_y == doctest::Approx(17.750).epsilon(1e-12));
    CHECK(set2.cov_xy == doctest::Approx(12.777777777777779).epsilon(1e-12));
}

TEST_CASE("classical data reduces the overall moments to the between terms") {
    auto dec = overall_decomposition(builtin_dataset(4), InternalModel::Uniform, 12);
    CHECK(dec.within_x == 0.0);
    CHECK(dec.within_y == 0.0);
    CHECK(dec.within_xy == 0.0);
    CHECK(dec.total.var_y == doctest::Approx(14.0 / 9.0).epsilon(1e-14));
    CHECK(dec.total.cov_xy == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(dec.total.var_x == dec.between.sigma2_x_hat);
}

TEST_CASE("empirical statistics match the hand-computed values") {
    auto set1 = empirical_stats(builtin_dataset(1));
    CHECK(set1.mean_y == doctest::Approx(41.0 / 6.0).epsilon(1e-14));

    auto set3 = empirical_stats(builtin_dataset(3));
    CHECK(set3.var_y == doctest::Approx(0.859375).epsilon(1e-13));
    CHECK(set3.cov_xy == doctest::Approx(28.75 / 24.0).epsilon(1e-13));
}

TEST_CASE("empirical statistics of classical data are the divisor-n statistics") {
    auto stats = empirical_stats(builtin_dataset(4));
    // y = {3, 6, 5}, x = {4, 5, 3}
    CHECK(stats.mean_y == doctest::Approx(14.0 / 3.0).epsilon(1e-14));
    CHECK(stats.var_y == doctest::Approx(14.0 / 9.0).epsilon(1e-12));
    CHECK(stats.cov_xy == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("the empirical identity holds on the built-in sets and random data") {
    for (int s = 1; s <= 4; ++s) {
        CHECK(check_empirical_identity(builtin_dataset(s)) <= 1e-12);
    }
    Rng rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.next_double() * 60);
        CHECK(check_empirical_identity(random_sample(rng, n)) <= 1e-10);
    }
}

TEST_CASE("center/range table values for the built-in sets") {
    auto cr1 = center_range_stats(builtin_dataset(1));
    CHECK(cr1.y.var_center == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
    CHECK(cr1.y.var_range == doctest::Approx(8.0 / 9.0).epsilon(1e-13));
    CHECK(cr1.y.sum == doctest::Approx(10.0 / 9.0).epsilon(1e-13));
    CHECK(cr1.y.symbolic == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(cr1.xy.cov_range == doctest::Approx(2.0 / 3.0).epsilon(1e-13));

    auto cr2 = center_range_stats(builtin_dataset(2));
    CHECK(cr2.xy.sum == doctest::Approx(22.583333333333332).epsilon(1e-12));
    CHECK(cr2.xy.symbolic == doctest::Approx(12.777777777777779).epsilon(1e-12));

    auto cr4 = center_range_stats(builtin_dataset(4));
    CHECK(cr4.y.var_range == 0.0);
    CHECK(cr4.y.sum == doctest::Approx(cr4.y.symbolic).epsilon(1e-13));
    CHECK(cr4.xy.sum == doctest::Approx(cr4.xy.symbolic).epsilon(1e-13));
}

TEST_CASE("overall variance decomposes into nonnegative within and between parts") {
    Rng rng(37);
    for (int rep = 0; rep < 50; ++rep) {
        auto sample = random_sample(rng, 20);
        for (auto model : {InternalModel::Uniform, InternalModel::Triangular,
                           InternalModel::Pert}) {
            auto dec = overall_decomposition(sample, model, 12);
            CHECK(dec.within_x >= 0.0);
            CHECK(dec.within_y >= 0.0);
            CHECK(dec.between.sigma2_x_hat >= 0.0);
            CHECK(dec.total.var_x ==
                  doctest::Approx(dec.within_x + dec.between.sigma2_x_hat).epsilon(1e-14));
            CHECK(dec.total.cov_xy * dec.total.cov_xy <=
                  dec.total.var_x * dec.total.var_y * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("the uniform within term strictly decreases in nu") {
    auto sample = builtin_dataset(1);
    double previous = overall_decomposition(sample, InternalModel::Uniform, 3).within_x;
    for (int nu = 4; nu <= 20; ++nu) {
        double current = overall_decomposition(sample, InternalModel::Uniform, nu).within_x;
        CHECK(current < previous);
        previous = current;
    }
}

TEST_CASE("translation and scale behavior of the overall moments") {
    Rng rng(41);
    auto sample = random_sample(rng, 15);
    auto base = overall_estimates(sample, InternalModel::Uniform, 12);

    const double s = 3.0, t = -11.5;
    std::vector<BivariateIntervalObs> mapped;
    for (const auto& obs : sample) {
        mapped.emplace_back(Interval(s * obs.x.lower() + t, s * obs.x.upper() + t), obs.y);
    }
    auto moved = overall_estimates(BivariateIntervalSample(std::move(mapped)),
                                   InternalModel::Uniform, 12);
    CHECK(moved.mean_x == doctest::Approx(s * base.mean_x + t).epsilon(1e-12));
    CHECK(moved.var_x == doctest::Approx(s * s * base.var_x).epsilon(1e-11));
    CHECK(moved.cov_xy == doctest::Approx(s * base.cov_xy).epsilon(1e-11));
    CHECK(moved.var_y == base.var_y);
}

TEST_CASE("triangular and pert overall estimates use their native divisors") {
    auto sample = builtin_dataset(1);
    auto tri = overall_decomposition(sample, InternalModel::Triangular, 12);
    auto uni = overall_decomposition(sample, InternalModel::Uniform, 12);
    // triangular within is half the uniform (nu = 12) within
    CHECK(tri.within_x == doctest::Approx(uni.within_x / 2.0).epsilon(1e-13));
    // and independent of nu
    auto tri7 = overall_decomposition(sample, InternalModel::Triangular, 7);
    CHECK(tri7.within_x == tri.within_x);

    auto pert = overall_decomposition(sample, InternalModel::Pert, 12);
    // midpoint modes: (mean-lo)(hi-mean)/7 = width^2/28
    double expected = 0.0;
    for (const auto& obs : sample) expected += obs.x.width() * obs.x.width() / 28.0;
    expected /= static_cast<double>(sample.size());
    CHECK(pert.within_x == doctest::Approx(expected).epsilon(1e-13));
}
