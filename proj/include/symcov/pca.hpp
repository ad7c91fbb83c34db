#ifndef SYMCOV_PCA_HPP
#define SYMCOV_PCA_HPP

#include <vector>

#include "symcov/estimators.hpp"
#include "symcov/interval.hpp"

namespace symcov {

/// A rectangular p-variable interval sample (p >= 2, n >= 2) with
/// optional per-cell Pert modes.
class MultivariateIntervalSample {
  public:
    MultivariateIntervalSample(std::size_t p, std::vector<std::vector<Interval>> rows,
                               std::vector<std::vector<std::optional<double>>> modes = {});

    std::size_t dim() const noexcept { return p_; }
    std::size_t size() const noexcept { return rows_.size(); }
    const Interval& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    double mode_at(std::size_t i, std::size_t j) const;

  private:
    std::size_t p_;
    std::vector<std::vector<Interval>> rows_;
    std::vector<std::vector<std::optional<double>>> modes_;
};

/// Small dense symmetric-friendly matrix, row-major.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues; // descending
    Matrix eigenvectors;             // orthonormal columns, matching order
};

struct PcResult {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
    std::vector<double> inertia;                     // explained-variance fractions
    std::vector<std::vector<Interval>> pc_intervals; // [observation][component]
    std::vector<double> means;                       // centering used
};

/// Overall variance/covariance matrix of a p-variable interval sample,
/// built pairwise: diagonal entries are the overall variances,
/// off-diagonal the overall covariances under the given internal model.
Matrix symbolic_cov_matrix(const MultivariateIntervalSample& sample,
                           InternalModel model, int nu);

/// Correlation version of the above (unit diagonal).
Matrix symbolic_corr_matrix(const MultivariateIntervalSample& sample,
                            InternalModel model, int nu);

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Sweeps until
/// the largest off-diagonal magnitude falls below 1e-12 * max|S|;
/// eigenvalues are sorted descending and each eigenvector's
/// largest-magnitude entry is made positive.
EigenDecomposition jacobi_eigen(const Matrix& s);

/// PC intervals by projecting each observation's interval hypercube
/// (centered at the variable means, optionally standardized) onto the
/// eigenvectors. The min/max over the 2^p vertices of a linear form is
/// attained coordinatewise at an endpoint picked by the loading sign,
/// so this is O(p) per component.
std::vector<std::vector<Interval>> project_intervals(
    const MultivariateIntervalSample& sample, const Matrix& eigenvectors,
    const std::vector<double>& means, const std::vector<double>* scales = nullptr);

/// Brute-force 2^p vertex enumeration of the same projection, kept as a
/// test oracle. Refuses p > 20.
std::vector<std::vector<Interval>> project_intervals_enumerated(
    const MultivariateIntervalSample& sample, const Matrix& eigenvectors,
    const std::vector<double>& means, const std::vector<double>* scales = nullptr);

/// Full pipeline: covariance (or correlation) matrix, eigendecomposition,
/// PC intervals, inertia fractions.
PcResult symbolic_pca(const MultivariateIntervalSample& sample, InternalModel model,
                      int nu, bool use_correlation = false);

} // namespace symcov

#endif // SYMCOV_PCA_HPP
