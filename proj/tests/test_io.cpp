#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "symcov/io.hpp"
#include "symcov/rng.hpp"

using namespace symcov;

TEST_CASE("interval csv round-trips the built-in data bit-exactly") {
    for (int s = 1; s <= builtin_dataset_count(); ++s) {
        auto sample = builtin_dataset(s);
        IntervalTable table;
        table.variables = {"x", "y"};
        for (const auto& obs : sample) {
            table.rows.push_back({obs.x, obs.y});
            table.modes.push_back({std::nullopt, std::nullopt});
        }
        std::ostringstream first;
        write_interval_csv(first, table);
        std::istringstream in(first.str());
        auto parsed = parse_interval_csv(in, "mem");
        std::ostringstream second;
        write_interval_csv(second, parsed);
        CHECK(first.str() == second.str());
        auto bivariate = to_bivariate(parsed);
        REQUIRE(bivariate.size() == sample.size());
        for (std::size_t i = 0; i < sample.size(); ++i) {
            CHECK(bivariate[i].x.lower() == sample[i].x.lower());
            CHECK(bivariate[i].y.upper() == sample[i].y.upper());
        }
    }
}

TEST_CASE("csv parsing handles modes, blank lines, and CRLF") {
    std::istringstream in(
        "x_lo,x_hi,y_lo,y_hi,y_mode\r\n"
        "1, 4, 6, 7, 6.5\r\n"
        "\r\n"
        "2,7,6,9,8\r\n");
    auto table = parse_interval_csv(in, "mem");
    REQUIRE(table.size() == 2);
    REQUIRE(table.dim() == 2);
    CHECK(table.variables[0] == "x");
    CHECK(table.modes[0][1] == 6.5);
    CHECK_FALSE(table.modes[0][0].has_value());
    auto sample = to_bivariate(table);
    CHECK(sample[1].resolved_mode_y() == 8.0);
    CHECK(sample[1].resolved_mode_x() == 4.5);
}

TEST_CASE("csv errors carry source location and data row") {
    std::istringstream bad_number("x_lo,x_hi,y_lo,y_hi\n1,abc,3,4\n");
    try {
        parse_interval_csv(bad_number, "input.csv");
        FAIL("expected parse_error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse_error);
        std::string msg = e.what();
        CHECK(msg.find("input.csv:2") != std::string::npos);
        CHECK(msg.find("data row 1") != std::string::npos);
        CHECK(msg.find("x_hi") != std::string::npos);
    }

    std::istringstream ragged("x_lo,x_hi,y_lo,y_hi\n1,2,3\n");
    CHECK_THROWS_AS((void)parse_interval_csv(ragged, "mem"), Error);

    std::istringstream missing_hi("x_lo,y_lo,y_hi\n1,2,3\n");
    CHECK_THROWS_AS((void)parse_interval_csv(missing_hi, "mem"), Error);

    std::istringstream inverted("x_lo,x_hi,y_lo,y_hi\n4,1,3,4\n");
    try {
        parse_interval_csv(inverted, "mem");
        FAIL("expected invalid_interval");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::invalid_interval);
        CHECK(std::string(e.what()).find("data row 1") != std::string::npos);
    }

    std::istringstream header_only("x_lo,x_hi,y_lo,y_hi\n");
    CHECK_THROWS_AS((void)parse_interval_csv(header_only, "mem"), Error);
}

TEST_CASE("format_double parses back to identical bits") {
    Rng rng(12345);
    for (int i = 0; i < 2000; ++i) {
        double v;
        if (i % 4 == 0) {
            v = std::floor(2000.0 * (rng.next_double() - 0.5));
        } else if (i % 4 == 1) {
            v = (rng.next_double() - 0.5) * 1e-8;
        } else {
            v = (rng.next_double() - 0.5) * std::pow(10.0, 10.0 * rng.next_double());
        }
        std::string text = format_double(v);
        CHECK(std::strtod(text.c_str(), nullptr) == v);
    }
    CHECK(format_double(0.75) == "0.75");
    CHECK(format_double(-2.0) == "-2");
}

TEST_CASE("study config parsing") {
    std::istringstream in(
        "# second parameter set\n"
        "mu_x = -2\n"
        "mu_y = 3\n"
        "sigma2_x = 1.5\n"
        "sigma2_y = 2.5\n"
        "sigma_xy = -1.75\n"
        "gamma1 = 1.25\n"
        "gamma2 = 2.5\n"
        "gamma3 = -1.75\n"
        "nu = 12\n"
        "sample_sizes = 50, 100, 500, 1000\n"
        "replications = 1000\n"
        "seed = 20260809\n"
        "level = theta\n");
    auto config = parse_study_config(in, "mem");
    CHECK(config.params.mu_x() == -2.0);
    CHECK(config.params.sigma_xy() == doctest::Approx(-1.75).epsilon(1e-14));
    CHECK(config.params.nu() == 12);
    CHECK(config.sample_sizes == std::vector<long>{50, 100, 500, 1000});
    CHECK(config.replications == 1000);
    CHECK(config.seed == 20260809ULL);
    CHECK(config.level == GenerationLevel::Theta);
}

TEST_CASE("study configs round-trip through write and parse") {
    StudyConfig config{TauParams::from_sigma_xy(-2, 3, 1.5, 2.5, -1.75, 1.25, 2.5, -1.75),
                       {50, 100, 500, 1000},
                       1000,
                       20260809,
                       GenerationLevel::Interval};
    std::ostringstream first;
    write_study_config(first, config);
    std::istringstream in(first.str());
    StudyConfig parsed = parse_study_config(in, "mem");
    std::ostringstream second;
    write_study_config(second, parsed);
    CHECK(first.str() == second.str());
    CHECK(parsed.params.rho() == config.params.rho());
    CHECK(parsed.level == GenerationLevel::Interval);
    CHECK(parsed.sample_sizes == config.sample_sizes);
}

TEST_CASE("study config rejects malformed input") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_study_config(in, "mem");
    };
    const std::string base =
        "mu_x = 0\nmu_y = 0\nsigma2_x = 1\nsigma2_y = 1\ngamma1 = 1\ngamma2 = 1\n"
        "gamma3 = 0\nsample_sizes = 50\nreplications = 10\nseed = 1\n";

    CHECK_THROWS_AS((void)parse(base), Error); // neither rho nor sigma_xy
    CHECK_THROWS_AS((void)parse(base + "rho = 0\nsigma_xy = 0\n"), Error);
    CHECK_THROWS_AS((void)parse(base + "rho = 0\nunknown_key = 3\n"), Error);
    CHECK_THROWS_AS((void)parse("rho = 0\nrho = 1\n" + base), Error);

    std::string zero_reps =
        "mu_x = 0\nmu_y = 0\nsigma2_x = 1\nsigma2_y = 1\nrho = 0\ngamma1 = 1\n"
        "gamma2 = 1\ngamma3 = 0\nsample_sizes = 50\nreplications = 0\nseed = 1\n";
    try {
        (void)parse(zero_reps);
        FAIL("expected config_error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::config_error);
    }
}

TEST_CASE("study csv layout is one row per component per sample size") {
    StudyConfig config{TauParams(0, 0, 1, 1, 0.2, 1, 1, 0.1, 12), {10, 20}, 3, 9,
                       GenerationLevel::Theta};
    auto report = run_study(config);
    std::ostringstream out;
    write_study_csv(out, report);
    std::istringstream lines(out.str());
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) ++count;
    CHECK(count == 1 + 2 * 10);
    CHECK(out.str().rfind("n,component,name,mean,sd,theoretical", 0) == 0);

    std::string json_text = study_report_json(report, config, "deadbeef");
    CHECK(json_text.find("\"n_var_s_xy\"") != std::string::npos);
    CHECK(json_text.find("deadbeef") != std::string::npos);
}

TEST_CASE("content digest is stable") {
    CHECK(fnv1a64("abc") == 0xe71fa2190541574bULL);
    CHECK(digest_hex("abc") == "e71fa2190541574b");
    CHECK(digest_hex("") == "cbf29ce484222325");
}

TEST_CASE("built-in datasets are the documented shapes") {
    CHECK(builtin_dataset_count() == 4);
    CHECK(builtin_dataset(1).size() == 3);
    CHECK(builtin_dataset(3).size() == 4);
    for (const auto& obs : builtin_dataset(4)) {
        CHECK(obs.x.degenerate());
        CHECK(obs.y.degenerate());
    }
    CHECK_THROWS_AS((void)builtin_dataset(0), Error);
    CHECK_THROWS_AS((void)builtin_dataset(5), Error);
}
