#include "schedest/source_model.hpp"

#include <cmath>

namespace schedest {

SourceModel::SourceModel(Eigen::MatrixXd cov) : cov_(std::move(cov)) {
    if (cov_.rows() != cov_.cols())
        throw NotSymmetricError("covariance must be square");
    if (cov_.rows() < 2)
        throw DimTooSmallError("source dimension must be at least 2");
    n_ = static_cast<int>(cov_.rows());

    for (int r = 0; r < n_; ++r)
        for (int c = r + 1; c < n_; ++c)
            if (cov_(r, c) != cov_(c, r))
                throw NotSymmetricError("covariance must be symmetric as stored");

    Eigen::LLT<Eigen::MatrixXd> llt(cov_);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefiniteError("covariance factorization failed; matrix not positive definite");
    chol_ = llt.matrixL();
}

void SourceModel::require_bivariate() const {
    if (n_ != 2)
        throw UnsupportedDimError("two-sensor accessor on a source of dimension != 2");
}

double SourceModel::sigma1_sq() const {
    require_bivariate();
    return cov_(0, 0);
}

double SourceModel::sigma2_sq() const {
    require_bivariate();
    return cov_(1, 1);
}

double SourceModel::rho() const {
    require_bivariate();
    return cov_(0, 1) / std::sqrt(cov_(0, 0) * cov_(1, 1));
}

SourceModel make_source(const Eigen::MatrixXd& cov) { return SourceModel(cov); }

SourceModel make_bivariate(double sigma1_sq, double sigma2_sq, double rho) {
    Eigen::Matrix2d cov;
    const double off = rho * std::sqrt(sigma1_sq * sigma2_sq);
    cov << sigma1_sq, off, off, sigma2_sq;
    return SourceModel(cov);
}

Decorrelation eigendecompose(const SourceModel& source) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(source.cov());
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: solver failed");

    const int n = source.dim();
    Decorrelation dec;
    dec.w.resize(n, n);
    dec.lambda.resize(n);

    // Solver returns ascending eigenvalues; store them descending.
    for (int k = 0; k < n; ++k) {
        dec.lambda(k) = solver.eigenvalues()(n - 1 - k);
        dec.w.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    if (dec.lambda(n - 1) <= 0.0)
        throw NotPositiveDefiniteError("eigendecompose: nonpositive eigenvalue");

    // Deterministic sign: first nonzero entry of each column positive.
    for (int k = 0; k < n; ++k) {
        for (int r = 0; r < n; ++r) {
            const double v = dec.w(r, k);
            if (std::abs(v) > 1e-12) {
                if (v < 0.0) dec.w.col(k) = -dec.w.col(k);
                break;
            }
        }
    }
    return dec;
}

ConditionalLaw conditional_law(const SourceModel& source, int i, int j, double xi) {
    if (source.dim() != 2)
        throw UnsupportedDimError("conditional_law: bivariate sources only");
    if (i < 1 || i > 2 || j < 1 || j > 2 || i == j)
        throw IndexError("conditional_law: indices must be distinct members of {1, 2}");

    const Eigen::MatrixXd& s = source.cov();
    const double sii = s(i - 1, i - 1);
    const double sjj = s(j - 1, j - 1);
    const double sij = s(i - 1, j - 1);
    return {sij / sjj * xi, sii - sij * sij / sjj};
}

}  // namespace schedest
