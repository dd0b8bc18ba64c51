#pragma once

#include <Eigen/Dense>

#include "schedest/errors.hpp"

namespace schedest {

/// Zero-mean n-variate Gaussian source (n >= 2), immutable after construction.
///
/// The constructor validates that the covariance is exactly symmetric as
/// stored and positive definite (a Cholesky factorization must succeed); the
/// lower triangular factor is cached for sampling.
class SourceModel {
  public:
    explicit SourceModel(Eigen::MatrixXd cov);

    int dim() const { return n_; }
    const Eigen::MatrixXd& cov() const { return cov_; }
    const Eigen::MatrixXd& chol_lower() const { return chol_; }

    bool is_bivariate() const { return n_ == 2; }

    // Two-sensor accessors; throw UnsupportedDimError when dim() != 2.
    double sigma1_sq() const;
    double sigma2_sq() const;
    double rho() const;

  private:
    void require_bivariate() const;

    int n_ = 0;
    Eigen::MatrixXd cov_;
    Eigen::MatrixXd chol_;
};

SourceModel make_source(const Eigen::MatrixXd& cov);

/// Bivariate convenience: covariance [[s1, r*sqrt(s1*s2)], [., s2]].
SourceModel make_bivariate(double sigma1_sq, double sigma2_sq, double rho);

/// Orthogonal eigendecomposition cov = W diag(lambda) W^T with eigenvalues
/// sorted descending and each column's first nonzero entry made positive.
struct Decorrelation {
    Eigen::MatrixXd w;       // columns are eigenvectors
    Eigen::VectorXd lambda;  // descending, strictly positive
};

Decorrelation eigendecompose(const SourceModel& source);

/// Gaussian law of X_i given X_j = xi (bivariate sources only).
struct ConditionalLaw {
    double mean = 0.0;
    double var = 0.0;
};

/// i and j are 1-based sensor indices, i != j.
ConditionalLaw conditional_law(const SourceModel& source, int i, int j, double xi);

}  // namespace schedest
