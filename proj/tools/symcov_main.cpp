#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "symcov/io.hpp"
#include "symcov/likelihood.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace symcov;

namespace {

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::io_error:
            return 3;
        case Errc::zero_variance:
        case Errc::out_of_support:
        case Errc::degenerate_theta:
        case Errc::not_symmetric:
        case Errc::no_convergence:
            return 4;
        default:
            return 2;
    }
}

fs::path default_out_dir() {
    if (const char* env = std::getenv("SYMCOV_OUT_DIR")) return fs::path(env);
    return fs::path(".");
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot open '" + path.string() + "' for writing");
    out << contents;
    if (!out) fail(Errc::io_error, "write to '" + path.string() + "' failed");
}

json between_json(const BetweenEstimates& b) {
    json j = {{"mu_x_hat", b.mu_x_hat},         {"mu_y_hat", b.mu_y_hat},
              {"sigma2_x_hat", b.sigma2_x_hat}, {"sigma2_y_hat", b.sigma2_y_hat},
              {"sigma_xy_hat", b.sigma_xy_hat}, {"rho_defined", b.rho_defined}};
    if (b.rho_defined) {
        j["rho_hat"] = b.rho_hat;
    } else {
        j["rho_hat"] = nullptr;
        j["rho_status"] = "undefined (zero between variance)";
    }
    return j;
}

json asymptotic_json(const AsymptoticReport& a) {
    return {{"var_mu_x", a.var_mu_x},         {"var_mu_y", a.var_mu_y},
            {"var_sigma2_x", a.var_sigma2_x}, {"var_sigma2_y", a.var_sigma2_y},
            {"var_sigma_xy", a.var_sigma_xy}, {"var_gamma1", a.var_gamma1},
            {"var_gamma2", a.var_gamma2},     {"var_gamma3", a.var_gamma3},
            {"var_s2_x", a.var_s2_x},         {"var_s2_y", a.var_s2_y},
            {"var_s_xy", a.var_s_xy}};
}

json center_range_json(const CenterRangeStats& cr) {
    auto var_row = [](const CenterRangeStats::VarRow& r) {
        return json{{"var_center", r.var_center},
                    {"var_range", r.var_range},
                    {"sum", r.sum},
                    {"symbolic", r.symbolic}};
    };
    return {{"x", var_row(cr.x)},
            {"y", var_row(cr.y)},
            {"xy",
             {{"cov_center", cr.xy.cov_center},
              {"cov_range", cr.xy.cov_range},
              {"sum", cr.xy.sum},
              {"symbolic", cr.xy.symbolic}}}};
}

void emit_flat_csv(std::ostream& out, const json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            emit_flat_csv(out, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            emit_flat_csv(out, j[i], prefix + "[" + std::to_string(i) + "]");
        }
    } else if (j.is_number_float()) {
        out << prefix << ',' << format_double(j.get<double>()) << '\n';
    } else {
        out << prefix << ',' << j.dump() << '\n';
    }
}

TauParams parse_params_list(const std::string& text, int nu) {
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    std::vector<double> v;
    double x;
    while (in >> x) v.push_back(x);
    if (!in.eof() || v.size() != 8) {
        fail(Errc::invalid_params,
             "--params expects 8 comma-separated numbers: "
             "mu_x,mu_y,sigma2_x,sigma2_y,rho,gamma1,gamma2,gamma3");
    }
    return TauParams(v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], nu);
}

int cmd_estimate(const std::string& input, const std::string& model_name, int nu,
                 const std::string& format) {
    InternalModel model = internal_model_from_name(model_name);
    IntervalTable table = read_interval_csv(input);
    BivariateIntervalSample sample = to_bivariate(table);
    const long n = static_cast<long>(sample.size());

    auto thetas = realize_all(sample, model);
    OverallDecomposition dec = overall_decomposition(sample, model, nu);
    WithinEstimates within = within_mles(thetas, nu);
    AsymptoticReport asym = plugin_asymptotic_variances(dec.between, within, n);
    GVector g = g_plugin(sample, model, nu);
    CenterRangeStats cr = center_range_stats(sample);

    json notes = json::array();
    if (model == InternalModel::Pert) {
        bool missing_modes = false;
        for (const auto& obs : sample) {
            if (!obs.mode_x || !obs.mode_y) missing_modes = true;
        }
        if (missing_modes) notes.push_back("pert modes absent; defaulted to interval midpoints");
    }

    json report = {
        {"command", "estimate"},
        {"version", kVersion},
        {"input", {{"path", input}, {"digest", file_digest_hex(input)}}},
        {"params", {{"model", internal_model_name(model)}, {"nu", nu}, {"n", n}}},
        {"results",
         {{"overall",
           {{"mean_x", dec.total.mean_x},
            {"mean_y", dec.total.mean_y},
            {"var_x", dec.total.var_x},
            {"var_y", dec.total.var_y},
            {"cov_xy", dec.total.cov_xy},
            {"within_x", dec.within_x},
            {"within_y", dec.within_y},
            {"within_xy", dec.within_xy}}},
          {"between", between_json(dec.between)},
          {"within",
           {{"gamma1_hat", within.gamma1_hat},
            {"gamma2_hat", within.gamma2_hat},
            {"gamma3_hat", within.gamma3_hat},
            {"nu", within.nu}}},
          {"asymptotic_variances", asymptotic_json(asym)},
          {"g_plugin", g},
          {"center_range", center_range_json(cr)},
          {"notes", notes}}},
    };

    if (format == "csv") {
        std::cout << "key,value\n";
        emit_flat_csv(std::cout, report, "");
    } else {
        std::cout << report.dump(2) << '\n';
    }
    return 0;
}

int cmd_simulate(const std::string& config_path, long seed_override, bool has_seed,
                 const std::string& out_dir, int threads) {
    StudyConfig config = read_study_config(config_path);
    if (has_seed) config.seed = static_cast<std::uint64_t>(seed_override);

    StudyReport report;
    try {
        report = run_study(config, threads);
    } catch (const Error& e) {
        std::cerr << "symcov: replication failure: " << e.what() << '\n';
        return 4;
    }

    fs::path dir = out_dir.empty() ? default_out_dir() : fs::path(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(Errc::io_error, "cannot create output directory '" + dir.string() + "'");

    std::ostringstream csv;
    write_study_csv(csv, report);
    write_file(dir / "study.csv", csv.str());
    write_file(dir / "study.json",
               study_report_json(report, config, file_digest_hex(config_path)) + "\n");

    std::cout << "wrote " << (dir / "study.csv").string() << " and "
              << (dir / "study.json").string() << '\n';
    return 0;
}

int cmd_pca(const std::string& input, const std::string& model_name, int nu,
            bool use_correlation, const std::string& out_dir) {
    InternalModel model = internal_model_from_name(model_name);
    IntervalTable table = read_interval_csv(input);
    MultivariateIntervalSample sample = to_multivariate(table);
    PcResult pc = symbolic_pca(sample, model, nu, use_correlation);

    fs::path dir = out_dir.empty() ? default_out_dir() : fs::path(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(Errc::io_error, "cannot create output directory '" + dir.string() + "'");

    std::ostringstream csv;
    csv << "observation,component,lower,upper\n";
    for (std::size_t i = 0; i < pc.pc_intervals.size(); ++i) {
        for (std::size_t k = 0; k < pc.pc_intervals[i].size(); ++k) {
            csv << (i + 1) << ',' << (k + 1) << ','
                << format_double(pc.pc_intervals[i][k].lower()) << ','
                << format_double(pc.pc_intervals[i][k].upper()) << '\n';
        }
    }
    write_file(dir / "pc_intervals.csv", csv.str());

    json vectors = json::array();
    for (std::size_t k = 0; k < pc.eigenvectors.cols(); ++k) {
        json column = json::array();
        for (std::size_t r = 0; r < pc.eigenvectors.rows(); ++r) {
            column.push_back(pc.eigenvectors(r, k));
        }
        vectors.push_back(column);
    }
    json summary = {
        {"command", "pca"},
        {"version", kVersion},
        {"input", {{"path", input}, {"digest", file_digest_hex(input)}}},
        {"params",
         {{"model", internal_model_name(model)},
          {"nu", nu},
          {"correlation", use_correlation},
          {"n", sample.size()},
          {"p", sample.dim()}}},
        {"results",
         {{"variables", table.variables},
          {"eigenvalues", pc.eigenvalues},
          {"inertia", pc.inertia},
          {"eigenvectors", vectors},
          {"means", pc.means}}},
    };
    write_file(dir / "eigen.json", summary.dump(2) + "\n");

    std::cout << "wrote " << (dir / "pc_intervals.csv").string() << " and "
              << (dir / "eigen.json").string() << '\n';
    return 0;
}

int cmd_appendix_a() {
    std::printf("Built-in data sets: variances and covariances\n\n");
    std::printf("(a) variances of y\n");
    std::printf("%-4s %12s %12s %12s %12s\n", "set", "var(y_c)", "var(y_r)", "sum", "var(y)");
    for (int s = 1; s <= builtin_dataset_count(); ++s) {
        CenterRangeStats cr = center_range_stats(builtin_dataset(s));
        std::printf("%-4d %12.3f %12.3f %12.3f %12.3f\n", s, cr.y.var_center, cr.y.var_range,
                    cr.y.sum, cr.y.symbolic);
    }
    std::printf("\n(b) covariances (y, x)\n");
    std::printf("%-4s %12s %12s %12s %12s\n", "set", "cov(c)", "cov(r)", "sum", "cov(y,x)");
    for (int s = 1; s <= builtin_dataset_count(); ++s) {
        CenterRangeStats cr = center_range_stats(builtin_dataset(s));
        std::printf("%-4d %12.3f %12.3f %12.3f %12.3f\n", s, cr.xy.cov_center, cr.xy.cov_range,
                    cr.xy.sum, cr.xy.symbolic);
    }
    return 0;
}

int cmd_gradcheck(const std::string& input, bool synthetic, const std::string& params_text,
                  int nu, long n, long seed, const std::string& format) {
    TauParams params = parse_params_list(params_text, nu);

    std::vector<ThetaRealization> thetas;
    std::string source;
    if (synthetic) {
        Rng rng = Rng::stream(static_cast<std::uint64_t>(seed), 0);
        thetas = generate_theta_sample(n, params, rng);
        source = "synthetic";
    } else {
        if (input.empty()) {
            fail(Errc::invalid_params, "gradcheck needs an input file or --synthetic");
        }
        IntervalTable table = read_interval_csv(input);
        thetas = realize_all(to_bivariate(table), InternalModel::Uniform);
        source = input;
    }

    GradientVector analytic;
    GradientVector fd;
    try {
        analytic = loglik_gradient(thetas, params);
        fd = loglik_gradient_fd(thetas, params);
    } catch (const Error& e) {
        if (e.code() == Errc::degenerate_theta) {
            std::cerr << "symcov: " << e.what() << '\n'
                      << "hint: interval-realized and classical variation triples sit on "
                         "the Wishart support boundary; use --synthetic to draw strictly "
                         "interior theta data from the model\n";
            return 4;
        }
        throw;
    }

    double max_rel = 0.0;
    auto a = analytic.as_array(), f = fd.as_array();
    for (int i = 0; i < 8; ++i) {
        max_rel = std::max(max_rel, std::abs(a[i] - f[i]) /
                                        std::max({std::abs(a[i]), std::abs(f[i]), 1e-3}));
    }

    // gradient at the closed-form MLE of the same data
    BetweenEstimates b = between_mles(thetas);
    WithinEstimates w = within_mles(thetas, params.nu());
    TauParams mle(b.mu_x_hat, b.mu_y_hat, b.sigma2_x_hat, b.sigma2_y_hat, b.rho_hat,
                  w.gamma1_hat, w.gamma2_hat, w.gamma3_hat, params.nu());
    auto g_mle = loglik_gradient(thetas, mle).as_array();
    double max_at_mle = 0.0;
    for (double v : g_mle) max_at_mle = std::max(max_at_mle, std::abs(v));

    json report = {
        {"command", "gradcheck"},
        {"version", kVersion},
        {"input", {{"source", source}, {"n", thetas.size()}, {"seed", seed}}},
        {"params",
         {{"mu_x", params.mu_x()},
          {"mu_y", params.mu_y()},
          {"sigma2_x", params.sigma2_x()},
          {"sigma2_y", params.sigma2_y()},
          {"rho", params.rho()},
          {"gamma1", params.gamma1()},
          {"gamma2", params.gamma2()},
          {"gamma3", params.gamma3()},
          {"nu", params.nu()}}},
        {"results",
         {{"max_rel_fd_error", max_rel},
          {"max_abs_gradient_at_mle", max_at_mle},
          {"loglik_at_params", loglik(thetas, params)},
          {"loglik_at_mle", loglik(thetas, mle)}}},
    };
    if (format == "csv") {
        std::cout << "key,value\n";
        emit_flat_csv(std::cout, report, "");
    } else {
        std::cout << report.dump(2) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistics for bivariate interval-valued (symbolic) data"};
    app.require_subcommand(1);

    // estimate
    auto* est = app.add_subcommand("estimate", "estimate overall moments from an interval CSV");
    std::string est_input, est_model = "uniform", est_format = "json";
    int est_nu = 12;
    est->add_option("input", est_input, "interval CSV file")->required();
    est->add_option("--model", est_model, "internal model: uniform|triangular|pert")
        ->check(CLI::IsMember({"uniform", "triangular", "pert"}));
    est->add_option("--nu", est_nu, "Wishart degrees of freedom (integer > 2)");
    est->add_option("--format", est_format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    // simulate
    auto* sim = app.add_subcommand("simulate", "run a seeded replication study from a config");
    std::string sim_config, sim_out;
    long sim_seed = 0;
    int sim_threads = 1;
    sim->add_option("config", sim_config, "study config file")->required();
    auto* sim_seed_opt = sim->add_option("--seed", sim_seed, "override the config seed");
    sim->add_option("--out", sim_out, "output directory (default $SYMCOV_OUT_DIR or .)");
    sim->add_option("--threads", sim_threads, "worker threads for replications");

    // pca
    auto* pca = app.add_subcommand("pca", "principal components of a p-variable interval CSV");
    std::string pca_input, pca_model = "uniform", pca_out;
    int pca_nu = 12;
    bool pca_corr = false;
    pca->add_option("input", pca_input, "interval CSV file")->required();
    pca->add_option("--model", pca_model, "internal model: uniform|triangular|pert")
        ->check(CLI::IsMember({"uniform", "triangular", "pert"}));
    pca->add_option("--nu", pca_nu, "Wishart degrees of freedom (integer > 2)");
    pca->add_flag("--correlation", pca_corr, "use the correlation matrix");
    pca->add_option("--out", pca_out, "output directory (default $SYMCOV_OUT_DIR or .)");

    // appendix-a
    app.add_subcommand("appendix-a", "print the built-in center/range comparison tables");

    // gradcheck
    auto* grad = app.add_subcommand("gradcheck",
                                    "verify the analytic log-likelihood gradient");
    std::string grad_input, grad_params = "0,0,1,1,0.3,2,1.5,0.4", grad_format = "json";
    bool grad_synth = false;
    int grad_nu = 12;
    long grad_n = 50, grad_seed = 1;
    grad->add_option("input", grad_input, "interval CSV file");
    grad->add_flag("--synthetic", grad_synth, "draw theta data from the model instead");
    grad->add_option("--params", grad_params,
                     "mu_x,mu_y,sigma2_x,sigma2_y,rho,gamma1,gamma2,gamma3");
    grad->add_option("--nu", grad_nu, "Wishart degrees of freedom (integer > 2)");
    grad->add_option("--n", grad_n, "synthetic sample size");
    grad->add_option("--seed", grad_seed, "synthetic data seed");
    grad->add_option("--format", grad_format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (est->parsed()) return cmd_estimate(est_input, est_model, est_nu, est_format);
        if (sim->parsed()) {
            return cmd_simulate(sim_config, sim_seed, sim_seed_opt->count() > 0, sim_out,
                                sim_threads);
        }
        if (pca->parsed()) return cmd_pca(pca_input, pca_model, pca_nu, pca_corr, pca_out);
        if (app.get_subcommand("appendix-a")->parsed()) return cmd_appendix_a();
        if (grad->parsed()) {
            return cmd_gradcheck(grad_input, grad_synth, grad_params, grad_nu, grad_n,
                                 grad_seed, grad_format);
        }
    } catch (const Error& e) {
        std::cerr << "symcov: error (" << errc_name(e.code()) << "): " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "symcov: error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
