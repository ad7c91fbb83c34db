#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symcov/asymptotics.hpp"
#include "symcov/estimators.hpp"
#include "symcov/io.hpp"
#include "symcov/likelihood.hpp"
#include "symcov/pca.hpp"
#include "symcov/simulator.hpp"

namespace py = pybind11;
using namespace symcov;

namespace {

BivariateIntervalSample sample_from_rows(const std::vector<std::vector<double>>& rows) {
    return validate_sample(rows);
}

TauParams params_from_kwargs(double mu_x, double mu_y, double sigma2_x, double sigma2_y,
                             double rho, double gamma1, double gamma2, double gamma3,
                             int nu) {
    return TauParams(mu_x, mu_y, sigma2_x, sigma2_y, rho, gamma1, gamma2, gamma3, nu);
}

py::dict overall_to_dict(const OverallDecomposition& dec) {
    py::dict within;
    within["x"] = dec.within_x;
    within["y"] = dec.within_y;
    within["xy"] = dec.within_xy;

    py::dict between;
    between["mu_x_hat"] = dec.between.mu_x_hat;
    between["mu_y_hat"] = dec.between.mu_y_hat;
    between["sigma2_x_hat"] = dec.between.sigma2_x_hat;
    between["sigma2_y_hat"] = dec.between.sigma2_y_hat;
    between["sigma_xy_hat"] = dec.between.sigma_xy_hat;
    between["rho_hat"] = dec.between.rho_defined ? py::cast(dec.between.rho_hat)
                                                 : py::cast<py::none>(py::none());

    py::dict out;
    out["mean_x"] = dec.total.mean_x;
    out["mean_y"] = dec.total.mean_y;
    out["var_x"] = dec.total.var_x;
    out["var_y"] = dec.total.var_y;
    out["cov_xy"] = dec.total.cov_xy;
    out["within"] = within;
    out["between"] = between;
    return out;
}

} // namespace

PYBIND11_MODULE(_symcov, m) {
    m.doc() = "estimators, likelihood, simulation, and PCA for bivariate "
              "interval-valued data";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "SymcovError");

    py::enum_<InternalModel>(m, "InternalModel")
        .value("uniform", InternalModel::Uniform)
        .value("triangular", InternalModel::Triangular)
        .value("pert", InternalModel::Pert);

    py::class_<BivariateIntervalSample>(m, "Sample")
        .def(py::init(&sample_from_rows), py::arg("rows"),
             "rows of (x_lo, x_hi, y_lo, y_hi[, mode_x, mode_y])")
        .def("__len__", &BivariateIntervalSample::size)
        .def("row",
             [](const BivariateIntervalSample& s, std::size_t i) {
                 if (i >= s.size()) throw py::index_error();
                 const auto& o = s[i];
                 return py::make_tuple(o.x.lower(), o.x.upper(), o.y.lower(), o.y.upper());
             })
        .def_static("builtin", &builtin_dataset, py::arg("index"),
                    "one of the four built-in example data sets (1..4)");

    py::class_<TauParams>(m, "TauParams")
        .def(py::init(&params_from_kwargs), py::arg("mu_x"), py::arg("mu_y"),
             py::arg("sigma2_x"), py::arg("sigma2_y"), py::arg("rho"), py::arg("gamma1"),
             py::arg("gamma2"), py::arg("gamma3"), py::arg("nu") = 12)
        .def_static("from_sigma_xy", &TauParams::from_sigma_xy, py::arg("mu_x"),
                    py::arg("mu_y"), py::arg("sigma2_x"), py::arg("sigma2_y"),
                    py::arg("sigma_xy"), py::arg("gamma1"), py::arg("gamma2"),
                    py::arg("gamma3"), py::arg("nu") = 12)
        .def_property_readonly("rho", &TauParams::rho)
        .def_property_readonly("sigma_xy", &TauParams::sigma_xy)
        .def_property_readonly("nu", &TauParams::nu);

    m.def("realize",
          [](const BivariateIntervalSample& sample, InternalModel model) {
              std::vector<std::array<double, 5>> out;
              for (const auto& t : realize_all(sample, model)) {
                  out.push_back({t.theta1_x, t.theta1_y, t.theta2_x, t.theta2_y, t.theta2_xy});
              }
              return out;
          },
          py::arg("sample"), py::arg("model") = InternalModel::Uniform,
          "per-observation (theta1_x, theta1_y, theta2_x, theta2_y, theta2_xy)");

    m.def("estimate",
          [](const BivariateIntervalSample& sample, InternalModel model, int nu) {
              auto dec = overall_decomposition(sample, model, nu);
              auto thetas = realize_all(sample, model);
              auto w = within_mles(thetas, nu);
              py::dict out = overall_to_dict(dec);
              py::dict gammas;
              gammas["gamma1_hat"] = w.gamma1_hat;
              gammas["gamma2_hat"] = w.gamma2_hat;
              gammas["gamma3_hat"] = w.gamma3_hat;
              out["within_mles"] = gammas;
              out["g_plugin"] = g_plugin(sample, model, nu);
              return out;
          },
          py::arg("sample"), py::arg("model") = InternalModel::Uniform, py::arg("nu") = 12);

    m.def("empirical_stats",
          [](const BivariateIntervalSample& sample) {
              auto e = empirical_stats(sample);
              py::dict out;
              out["mean_x"] = e.mean_x;
              out["mean_y"] = e.mean_y;
              out["var_x"] = e.var_x;
              out["var_y"] = e.var_y;
              out["cov_xy"] = e.cov_xy;
              return out;
          },
          py::arg("sample"));

    m.def("check_empirical_identity", &check_empirical_identity, py::arg("sample"));

    m.def("loglik",
          [](const std::vector<std::array<double, 5>>& thetas, const TauParams& params) {
              std::vector<ThetaRealization> t;
              for (const auto& r : thetas) t.push_back({r[0], r[1], r[2], r[3], r[4]});
              return loglik(t, params);
          },
          py::arg("thetas"), py::arg("params"));

    m.def("loglik_gradient",
          [](const std::vector<std::array<double, 5>>& thetas, const TauParams& params) {
              std::vector<ThetaRealization> t;
              for (const auto& r : thetas) t.push_back({r[0], r[1], r[2], r[3], r[4]});
              return loglik_gradient(t, params).as_array();
          },
          py::arg("thetas"), py::arg("params"),
          "analytic gradient (mu_x, mu_y, sigma_x, sigma_y, rho, gamma1, gamma2, gamma3)");

    m.def("loglik_gradient_fd",
          [](const std::vector<std::array<double, 5>>& thetas, const TauParams& params,
             double rel_step) {
              std::vector<ThetaRealization> t;
              for (const auto& r : thetas) t.push_back({r[0], r[1], r[2], r[3], r[4]});
              return loglik_gradient_fd(t, params, rel_step).as_array();
          },
          py::arg("thetas"), py::arg("params"), py::arg("rel_step") = 1e-5);

    m.def("g_theoretical", &g_theoretical, py::arg("params"));

    m.def("generate_theta_sample",
          [](long n, const TauParams& params, std::uint64_t seed) {
              Rng rng = Rng::stream(seed, 0);
              std::vector<std::array<double, 5>> out;
              for (const auto& t : generate_theta_sample(n, params, rng)) {
                  out.push_back({t.theta1_x, t.theta1_y, t.theta2_x, t.theta2_y, t.theta2_xy});
              }
              return out;
          },
          py::arg("n"), py::arg("params"), py::arg("seed"));

    m.def("run_study",
          [](const TauParams& params, const std::vector<long>& sample_sizes,
             long replications, std::uint64_t seed, const std::string& level, int threads) {
              StudyConfig config{params, sample_sizes, replications, seed,
                                 level == "interval" ? GenerationLevel::Interval
                                                     : GenerationLevel::Theta};
              StudyReport rep = run_study(config, threads);
              py::dict out;
              out["theoretical"] = rep.theoretical;
              py::list per_size;
              for (std::size_t si = 0; si < rep.sample_sizes.size(); ++si) {
                  py::dict entry;
                  entry["n"] = rep.sample_sizes[si];
                  std::array<double, 10> means{}, sds{};
                  for (int c = 0; c < 10; ++c) {
                      means[static_cast<std::size_t>(c)] = rep.cells[si][c].mean;
                      sds[static_cast<std::size_t>(c)] = rep.cells[si][c].sd;
                  }
                  entry["mean"] = means;
                  entry["sd"] = sds;
                  per_size.append(entry);
              }
              out["results"] = per_size;
              return out;
          },
          py::arg("params"), py::arg("sample_sizes"), py::arg("replications"),
          py::arg("seed"), py::arg("level") = "theta", py::arg("threads") = 1);

    m.def("pca",
          [](const std::vector<std::vector<double>>& lo,
             const std::vector<std::vector<double>>& hi, InternalModel model, int nu,
             bool correlation) {
              if (lo.size() != hi.size()) {
                  fail(Errc::ragged_rows, "lo and hi row counts differ");
              }
              std::vector<std::vector<Interval>> rows;
              for (std::size_t i = 0; i < lo.size(); ++i) {
                  if (lo[i].size() != hi[i].size()) {
                      fail(Errc::ragged_rows, "lo and hi column counts differ");
                  }
                  std::vector<Interval> row;
                  for (std::size_t j = 0; j < lo[i].size(); ++j) {
                      row.emplace_back(lo[i][j], hi[i][j]);
                  }
                  rows.push_back(std::move(row));
              }
              std::size_t p = rows.empty() ? 0 : rows[0].size();
              MultivariateIntervalSample sample(p, std::move(rows));
              PcResult pc = symbolic_pca(sample, model, nu, correlation);

              py::dict out;
              out["eigenvalues"] = pc.eigenvalues;
              out["inertia"] = pc.inertia;
              out["means"] = pc.means;
              py::list vectors;
              for (std::size_t k = 0; k < pc.eigenvectors.cols(); ++k) {
                  py::list column;
                  for (std::size_t r = 0; r < pc.eigenvectors.rows(); ++r) {
                      column.append(pc.eigenvectors(r, k));
                  }
                  vectors.append(column);
              }
              out["eigenvectors"] = vectors;
              py::list intervals;
              for (const auto& row : pc.pc_intervals) {
                  py::list comps;
                  for (const auto& iv : row) {
                      comps.append(py::make_tuple(iv.lower(), iv.upper()));
                  }
                  intervals.append(comps);
              }
              out["pc_intervals"] = intervals;
              return out;
          },
          py::arg("lo"), py::arg("hi"), py::arg("model") = InternalModel::Uniform,
          py::arg("nu") = 12, py::arg("correlation") = false);
}
