#pragma once

#include <Eigen/Dense>
#include <functional>

#include "schedest/errors.hpp"

namespace schedest {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error bound
};

/// Adaptive Gauss-Kronrod 15(7) integration of f over [a, b].
///
/// Panels are bisected (worst error first) until the summed error estimate
/// drops below max(abs_tol, rel_tol * |value|). Throws QuadratureFailure if
/// the panel limit is reached first.
QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol = 0.0, int max_panels = 256);

/// E[T | lo <= T <= hi] for T ~ N(mean, var).
///
/// Evaluated as a ratio of adaptive quadratures of the standardized integrand;
/// the refinement target keeps the absolute error of the returned mean below
/// abs_tol. When both truncation points are more than 12 standard deviations
/// from the kernel mean, the truncation mass is negligible below double
/// precision and the untruncated mean (clipped to [lo, hi]) is returned.
double truncated_gaussian_mean(double lo, double hi, double mean, double var,
                               double abs_tol = 1e-10);

/// Gauss-Hermite rule mapped onto the standard normal weight:
/// E[f(Z)] ~= sum_i weights[i] * f(nodes[i]) for Z ~ N(0,1).
/// Nodes are ascending and the weights sum to one.
struct GaussHermiteRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};
GaussHermiteRule gauss_hermite_normal(int order);

}  // namespace schedest
