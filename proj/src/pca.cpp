#include "symcov/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace symcov {

MultivariateIntervalSample::MultivariateIntervalSample(
    std::size_t p, std::vector<std::vector<Interval>> rows,
    std::vector<std::vector<std::optional<double>>> modes)
    : p_(p), rows_(std::move(rows)), modes_(std::move(modes)) {
    if (p_ < 2) fail(Errc::invalid_params, "multivariate sample needs p >= 2 variables");
    if (rows_.size() < 2) fail(Errc::empty_sample, "multivariate sample needs n >= 2 rows");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].size() != p_) {
            std::ostringstream msg;
            msg << "row " << (i + 1) << " has " << rows_[i].size() << " intervals, expected " << p_;
            fail(Errc::ragged_rows, msg.str());
        }
    }
    if (modes_.empty()) {
        modes_.assign(rows_.size(), std::vector<std::optional<double>>(p_));
    }
    if (modes_.size() != rows_.size()) {
        fail(Errc::ragged_rows, "mode rows do not match interval rows");
    }
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (modes_[i].size() != p_) fail(Errc::ragged_rows, "mode columns do not match p");
        for (std::size_t j = 0; j < p_; ++j) {
            if (modes_[i][j] && !rows_[i][j].contains(*modes_[i][j])) {
                std::ostringstream msg;
                msg << "row " << (i + 1) << ", variable " << (j + 1) << ": mode "
                    << *modes_[i][j] << " outside its interval";
                fail(Errc::mode_out_of_range, msg.str());
            }
        }
    }
}

double MultivariateIntervalSample::mode_at(std::size_t i, std::size_t j) const {
    return modes_[i][j] ? *modes_[i][j] : rows_[i][j].midpoint();
}

namespace {

// Bivariate view of two columns; shares all arithmetic with the
// two-variable estimators so the p = 2 matrix matches them exactly.
BivariateIntervalSample column_pair(const MultivariateIntervalSample& s,
                                    std::size_t j, std::size_t k) {
    std::vector<BivariateIntervalObs> obs;
    obs.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        obs.emplace_back(s.at(i, j), s.at(i, k), s.mode_at(i, j), s.mode_at(i, k));
    }
    return BivariateIntervalSample(std::move(obs));
}

std::vector<double> model_means(const MultivariateIntervalSample& s, InternalModel model) {
    std::vector<double> means(s.dim(), 0.0);
    for (std::size_t j = 0; j < s.dim(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (model == InternalModel::Pert) {
                sum += (s.at(i, j).lower() + 4.0 * s.mode_at(i, j) + s.at(i, j).upper()) / 6.0;
            } else {
                sum += s.at(i, j).midpoint();
            }
        }
        means[j] = sum / static_cast<double>(s.size());
    }
    return means;
}

} // namespace

Matrix symbolic_cov_matrix(const MultivariateIntervalSample& sample,
                           InternalModel model, int nu) {
    const std::size_t p = sample.dim();
    Matrix cov(p, p);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = j; k < p; ++k) {
            double value = overall_estimates(column_pair(sample, j, k), model, nu).cov_xy;
            cov(j, k) = value;
            cov(k, j) = value;
        }
    }
    return cov;
}

Matrix symbolic_corr_matrix(const MultivariateIntervalSample& sample,
                            InternalModel model, int nu) {
    Matrix cov = symbolic_cov_matrix(sample, model, nu);
    const std::size_t p = cov.rows();
    for (std::size_t j = 0; j < p; ++j) {
        if (cov(j, j) <= 0.0) {
            std::ostringstream msg;
            msg << "variable " << (j + 1) << " has zero overall variance; "
                << "correlation matrix undefined";
            fail(Errc::zero_variance, msg.str());
        }
    }
    Matrix corr(p, p);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = 0; k < p; ++k) {
            corr(j, k) = cov(j, k) / std::sqrt(cov(j, j) * cov(k, k));
        }
    }
    return corr;
}

EigenDecomposition jacobi_eigen(const Matrix& s) {
    const std::size_t p = s.rows();
    if (p == 0 || s.cols() != p) fail(Errc::not_symmetric, "matrix must be square");

    double max_abs = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            if (!std::isfinite(s(i, j))) fail(Errc::non_finite, "matrix entries must be finite");
            max_abs = std::max(max_abs, std::abs(s(i, j)));
        }
    }
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            if (std::abs(s(i, j) - s(j, i)) > 1e-12 * std::max(max_abs, 1.0)) {
                fail(Errc::not_symmetric, "matrix is not symmetric");
            }
        }
    }

    Matrix a = s;
    Matrix v(p, p);
    for (std::size_t i = 0; i < p; ++i) v(i, i) = 1.0;

    const double tol = 1e-12 * max_abs;
    const int max_sweeps = 100;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = i + 1; j < p; ++j) off = std::max(off, std::abs(a(i, j)));
        }
        if (off <= tol) {
            converged = true;
            break;
        }
        for (std::size_t q = 1; q < p; ++q) {
            for (std::size_t pp = 0; pp < q; ++pp) {
                double apq = a(pp, q);
                if (apq == 0.0) continue;
                double tau = (a(q, q) - a(pp, pp)) / (2.0 * apq);
                double t = (tau >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double sn = t * c;

                for (std::size_t k = 0; k < p; ++k) {
                    double akp = a(k, pp), akq = a(k, q);
                    a(k, pp) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < p; ++k) {
                    double apk = a(pp, k), aqk = a(q, k);
                    a(pp, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                a(pp, q) = 0.0;
                a(q, pp) = 0.0;
                for (std::size_t k = 0; k < p; ++k) {
                    double vkp = v(k, pp), vkq = v(k, q);
                    v(k, pp) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged) {
        double off = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = i + 1; j < p; ++j) off = std::max(off, std::abs(a(i, j)));
        }
        if (off > tol) fail(Errc::no_convergence, "Jacobi sweeps did not converge");
    }

    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out;
    out.eigenvalues.resize(p);
    out.eigenvectors = Matrix(p, p);
    for (std::size_t c = 0; c < p; ++c) {
        std::size_t src = order[c];
        out.eigenvalues[c] = a(src, src);
        std::size_t arg_max = 0;
        double best = -1.0;
        for (std::size_t r = 0; r < p; ++r) {
            if (std::abs(v(r, src)) > best) {
                best = std::abs(v(r, src));
                arg_max = r;
            }
        }
        double sign = v(arg_max, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < p; ++r) out.eigenvectors(r, c) = sign * v(r, src);
    }
    return out;
}

std::vector<std::vector<Interval>> project_intervals(
    const MultivariateIntervalSample& sample, const Matrix& eigenvectors,
    const std::vector<double>& means, const std::vector<double>* scales) {
    const std::size_t p = sample.dim();
    const std::size_t n = sample.size();
    if (eigenvectors.rows() != p || means.size() != p) {
        fail(Errc::invalid_params, "eigenvector/mean dimensions do not match the sample");
    }

    std::vector<std::vector<Interval>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Interval> comps;
        comps.reserve(eigenvectors.cols());
        for (std::size_t k = 0; k < eigenvectors.cols(); ++k) {
            double lo = 0.0, hi = 0.0;
            for (std::size_t j = 0; j < p; ++j) {
                double scale = scales ? (*scales)[j] : 1.0;
                double zl = (sample.at(i, j).lower() - means[j]) / scale;
                double zh = (sample.at(i, j).upper() - means[j]) / scale;
                double w = eigenvectors(j, k);
                if (w >= 0.0) {
                    lo += w * zl;
                    hi += w * zh;
                } else {
                    lo += w * zh;
                    hi += w * zl;
                }
            }
            comps.emplace_back(std::min(lo, hi), std::max(lo, hi));
        }
        out.push_back(std::move(comps));
    }
    return out;
}

std::vector<std::vector<Interval>> project_intervals_enumerated(
    const MultivariateIntervalSample& sample, const Matrix& eigenvectors,
    const std::vector<double>& means, const std::vector<double>* scales) {
    const std::size_t p = sample.dim();
    if (p > 20) {
        std::ostringstream msg;
        msg << "vertex enumeration over 2^" << p << " corners refused (p > 20)";
        fail(Errc::too_many_vertices, msg.str());
    }
    if (eigenvectors.rows() != p || means.size() != p) {
        fail(Errc::invalid_params, "eigenvector/mean dimensions do not match the sample");
    }

    const std::size_t n = sample.size();
    const std::size_t vertices = std::size_t{1} << p;
    std::vector<std::vector<Interval>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Interval> comps;
        for (std::size_t k = 0; k < eigenvectors.cols(); ++k) {
            double lo = 0.0, hi = 0.0;
            for (std::size_t mask = 0; mask < vertices; ++mask) {
                double proj = 0.0;
                for (std::size_t j = 0; j < p; ++j) {
                    double coord = (mask >> j) & 1U ? sample.at(i, j).upper()
                                                    : sample.at(i, j).lower();
                    double scale = scales ? (*scales)[j] : 1.0;
                    proj += eigenvectors(j, k) * (coord - means[j]) / scale;
                }
                if (mask == 0) {
                    lo = hi = proj;
                } else {
                    lo = std::min(lo, proj);
                    hi = std::max(hi, proj);
                }
            }
            comps.emplace_back(lo, hi);
        }
        out.push_back(std::move(comps));
    }
    return out;
}

PcResult symbolic_pca(const MultivariateIntervalSample& sample, InternalModel model,
                      int nu, bool use_correlation) {
    Matrix cov = symbolic_cov_matrix(sample, model, nu);

    std::vector<double> scales;
    const std::vector<double>* scales_ptr = nullptr;
    Matrix target = cov;
    if (use_correlation) {
        target = symbolic_corr_matrix(sample, model, nu);
        scales.resize(sample.dim());
        for (std::size_t j = 0; j < sample.dim(); ++j) scales[j] = std::sqrt(cov(j, j));
        scales_ptr = &scales;
    }

    EigenDecomposition eig = jacobi_eigen(target);

    PcResult result;
    result.eigenvalues = eig.eigenvalues;
    result.eigenvectors = eig.eigenvectors;
    result.means = model_means(sample, model);

    double trace = std::accumulate(eig.eigenvalues.begin(), eig.eigenvalues.end(), 0.0);
    result.inertia.resize(eig.eigenvalues.size());
    for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
        result.inertia[k] = trace != 0.0 ? eig.eigenvalues[k] / trace : 0.0;
    }

    result.pc_intervals = project_intervals(sample, eig.eigenvectors, result.means, scales_ptr);
    return result;
}

} // namespace symcov
