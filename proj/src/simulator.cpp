#include "symcov/simulator.hpp"

#include <cmath>
#include <thread>

namespace symcov {

void StudyConfig::validate() const {
    if (replications < 1) fail(Errc::config_error, "replications must be >= 1");
    if (sample_sizes.empty()) fail(Errc::config_error, "at least one sample size required");
    for (long n : sample_sizes) {
        if (n < 2) fail(Errc::config_error, "sample sizes must be >= 2");
    }
}

std::pair<double, double> sample_bvn_pair(const TauParams& params, Rng& rng) {
    double z1 = rng.next_normal();
    double z2 = rng.next_normal();
    double x = params.mu_x() + params.sigma_x() * z1;
    double y = params.mu_y() +
               params.sigma_y() * (params.rho() * z1 +
                                   std::sqrt(1.0 - params.rho() * params.rho()) * z2);
    return {x, y};
}

std::array<double, 3> sample_wishart(int nu, double gamma1, double gamma2,
                                     double gamma3, Rng& rng) {
    if (nu < 2) fail(Errc::invalid_params, "Wishart sampling needs integer nu >= 2");
    if (gamma1 <= 0.0 || gamma1 * gamma2 - gamma3 * gamma3 <= 0.0) {
        fail(Errc::invalid_params, "Wishart scale must be positive definite");
    }
    // lower-triangular factor of Gamma
    double l11 = std::sqrt(gamma1);
    double l21 = gamma3 / l11;
    double l22 = std::sqrt(gamma2 - l21 * l21);

    double w11 = 0.0, w22 = 0.0, w12 = 0.0;
    for (int k = 0; k < nu; ++k) {
        double z1 = rng.next_normal();
        double z2 = rng.next_normal();
        double u = l11 * z1;
        double v = l21 * z1 + l22 * z2;
        w11 += u * u;
        w22 += v * v;
        w12 += u * v;
    }
    return {w11, w22, w12};
}

std::vector<ThetaRealization> generate_theta_sample(long n, const TauParams& params,
                                                    Rng& rng) {
    std::vector<ThetaRealization> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        auto [t1x, t1y] = sample_bvn_pair(params, rng);
        auto w = sample_wishart(params.nu(), params.gamma1(), params.gamma2(),
                                params.gamma3(), rng);
        out.push_back({t1x, t1y, w[0], w[1], w[2]});
    }
    return out;
}

BivariateIntervalSample generate_interval_sample(long n, const TauParams& params,
                                                 Rng& rng) {
    std::vector<BivariateIntervalObs> obs;
    obs.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        auto [x, y] = sample_bvn_pair(params, rng);
        auto w = sample_wishart(params.nu(), params.gamma1(), params.gamma2(),
                                params.gamma3(), rng);
        double half_wx = std::sqrt(w[0]) / 2.0;
        double half_wy = std::sqrt(w[1]) / 2.0;
        obs.emplace_back(Interval(x - half_wx, x + half_wx),
                         Interval(y - half_wy, y + half_wy));
    }
    return BivariateIntervalSample(std::move(obs));
}

namespace {

GVector replicate_once(const StudyConfig& config, long n, Rng rng) {
    if (config.level == GenerationLevel::Theta) {
        auto thetas = generate_theta_sample(n, config.params, rng);
        return g_plugin(thetas, config.params.nu());
    }
    auto sample = generate_interval_sample(n, config.params, rng);
    return g_plugin(sample, InternalModel::Uniform, config.params.nu());
}

void run_block(const StudyConfig& config, long n, std::uint64_t size_key,
               long first, long last, std::vector<GVector>& out) {
    for (long r = first; r < last; ++r) {
        Rng rng = Rng::stream(config.seed,
                              size_key * static_cast<std::uint64_t>(config.replications) +
                                  static_cast<std::uint64_t>(r));
        out[static_cast<std::size_t>(r)] = replicate_once(config, n, rng);
    }
}

} // namespace

StudyReport run_study(const StudyConfig& config, int threads) {
    config.validate();
    if (threads < 1) threads = 1;

    StudyReport report;
    report.sample_sizes = config.sample_sizes;
    report.theoretical = g_theoretical(config.params);

    const long b = config.replications;
    for (std::size_t si = 0; si < config.sample_sizes.size(); ++si) {
        const long n = config.sample_sizes[si];
        std::vector<GVector> draws(static_cast<std::size_t>(b));

        if (threads == 1 || b < 2 * threads) {
            run_block(config, n, si, 0, b, draws);
        } else {
            std::vector<std::thread> pool;
            long chunk = (b + threads - 1) / threads;
            for (int t = 0; t < threads; ++t) {
                long first = t * chunk;
                long last = std::min(b, first + chunk);
                if (first >= last) break;
                pool.emplace_back(run_block, std::cref(config), n, si, first, last,
                                  std::ref(draws));
            }
            for (auto& th : pool) th.join();
        }

        std::array<StudyCell, 10> cells{};
        for (int c = 0; c < 10; ++c) {
            double sum = 0.0;
            for (const auto& g : draws) sum += g[static_cast<std::size_t>(c)];
            double mean = sum / static_cast<double>(b);
            double ss = 0.0;
            for (const auto& g : draws) {
                double d = g[static_cast<std::size_t>(c)] - mean;
                ss += d * d;
            }
            cells[static_cast<std::size_t>(c)] = {mean, std::sqrt(ss / static_cast<double>(b))};
        }
        report.cells.push_back(cells);
    }
    return report;
}

} // namespace symcov
