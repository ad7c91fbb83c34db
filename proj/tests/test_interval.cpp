#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>

#include "symcov/interval.hpp"

using namespace symcov;

namespace {

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a symcov::Error");
    return Errc::invalid_params;
}

} // namespace

TEST_CASE("interval construction preserves endpoints bit-exactly") {
    Interval i(1.25, 4.75);
    CHECK(i.lower() == 1.25);
    CHECK(i.upper() == 4.75);
    CHECK(i.midpoint() == 3.0);
    CHECK(i.width() == 3.5);
    CHECK_FALSE(i.degenerate());

    Interval point(3.0, 3.0);
    CHECK(point.degenerate());
    CHECK(point.width() == 0.0);
}

TEST_CASE("interval rejects inverted and non-finite endpoints") {
    CHECK(code_of([] { Interval(5.0, 2.0); }) == Errc::invalid_interval);
    CHECK(code_of([] { Interval(std::nan(""), 1.0); }) == Errc::non_finite);
    CHECK(code_of([] { Interval(0.0, std::numeric_limits<double>::infinity()); }) ==
          Errc::non_finite);
}

TEST_CASE("observation modes must lie inside their intervals") {
    BivariateIntervalObs obs(Interval(0, 4), Interval(1, 3), 2.0, 1.0);
    CHECK(obs.resolved_mode_x() == 2.0);
    CHECK(obs.resolved_mode_y() == 1.0);

    BivariateIntervalObs defaulted(Interval(0, 4), Interval(1, 3));
    CHECK(defaulted.resolved_mode_x() == 2.0);
    CHECK(defaulted.resolved_mode_y() == 2.0);

    CHECK(code_of([] {
              BivariateIntervalObs(Interval(0, 4), Interval(1, 3), 5.0, std::nullopt);
          }) == Errc::mode_out_of_range);
    CHECK(code_of([] {
              BivariateIntervalObs(Interval(0, 4), Interval(1, 3), std::nullopt, 0.5);
          }) == Errc::mode_out_of_range);
}

TEST_CASE("validate_sample accepts the built-in style rows") {
    std::vector<std::vector<double>> rows = {{1, 4, 6, 7}, {2, 7, 6, 9}, {1, 5, 5, 8}};
    auto sample = validate_sample(rows);
    REQUIRE(sample.size() == 3);
    CHECK(sample[0].x.lower() == 1);
    CHECK(sample[0].x.upper() == 4);
    CHECK(sample[0].y.lower() == 6);
    CHECK(sample[0].y.upper() == 7);
    CHECK(sample[2].y.upper() == 8);
}

TEST_CASE("validate_sample accepts degenerate rows and six-column rows") {
    std::vector<std::vector<double>> rows = {{3, 3, 4, 4}, {1, 5, 2, 8, 2.5, 6.0}};
    auto sample = validate_sample(rows);
    CHECK(sample[0].x.degenerate());
    CHECK(sample[0].y.degenerate());
    CHECK(sample[1].mode_x.has_value());
    CHECK(sample[1].resolved_mode_y() == 6.0);
}

TEST_CASE("validate_sample reports the failing row") {
    std::vector<std::vector<double>> rows = {{5, 2, 0, 1}, {0, 1, 0, 1}};
    try {
        validate_sample(rows);
        FAIL("expected invalid_interval");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_interval);
        CHECK(std::string(e.what()).find("row 1") != std::string::npos);
    }

    std::vector<std::vector<double>> short_sample = {{0, 1, 0, 1}};
    CHECK(code_of([&] { validate_sample(short_sample); }) == Errc::empty_sample);

    std::vector<std::vector<double>> ragged = {{0, 1, 0, 1, 0.5}, {0, 1, 0, 1}};
    CHECK(code_of([&] { validate_sample(ragged); }) == Errc::ragged_rows);
}

TEST_CASE("tau params validate their domain") {
    TauParams p(1, 5, 4, 3, 0.5, 7, 5, -2);
    CHECK(p.sigma_xy() == doctest::Approx(0.5 * 2.0 * std::sqrt(3.0)));
    CHECK(p.scale_det() == doctest::Approx(31.0));
    CHECK(p.nu() == 12);

    CHECK(code_of([] { TauParams(0, 0, 0.0, 1, 0, 1, 1, 0); }) == Errc::invalid_params);
    CHECK(code_of([] { TauParams(0, 0, 1, -1, 0, 1, 1, 0); }) == Errc::invalid_params);
    CHECK(code_of([] { TauParams(0, 0, 1, 1, 1.0, 1, 1, 0); }) == Errc::invalid_params);
    CHECK(code_of([] { TauParams(0, 0, 1, 1, 0, -1, 1, 0); }) == Errc::invalid_params);
    CHECK(code_of([] { TauParams(0, 0, 1, 1, 0, 1, 1, 0, 2); }) == Errc::invalid_params);
}

TEST_CASE("tau params reject the positive-definite boundary exactly") {
    // |gamma3| = sqrt(gamma1 * gamma2) makes the scale singular
    CHECK(code_of([] { TauParams(0, 0, 1, 1, 0, 4, 9, 6.0); }) == Errc::invalid_params);
    CHECK(code_of([] { TauParams(0, 0, 1, 1, 0, 4, 9, -6.0); }) == Errc::invalid_params);
    TauParams ok(0, 0, 1, 1, 0, 4, 9, 5.999999);
    CHECK(ok.scale_det() > 0.0);
}

TEST_CASE("from_sigma_xy matches the rho parameterization") {
    TauParams p = TauParams::from_sigma_xy(-2, 3, 1.5, 2.5, -1.75, 1.25, 2.5, -1.75);
    CHECK(p.rho() == doctest::Approx(-1.75 / std::sqrt(1.5 * 2.5)).epsilon(1e-14));
    CHECK(p.sigma_xy() == doctest::Approx(-1.75).epsilon(1e-14));
}
