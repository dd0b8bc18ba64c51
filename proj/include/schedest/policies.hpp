#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <variant>

#include "schedest/source_model.hpp"

namespace schedest {

/// One channel packet: the transmitted sensor index (1-based) and its value.
struct ChannelMessage {
    int index = 1;
    double value = 0.0;
};

/// Scalar representation function eta: R -> R specifying how the estimator
/// fills in an untransmitted coordinate.
using RepresentationFn = std::function<double(double)>;

/// Transmit the coordinate of largest magnitude; ties go to the smaller index.
int max_schedule(const Eigen::VectorXd& x);

/// Transmit the sensor with the largest variance regardless of the
/// observation; ties go to the smaller index.
int open_loop_schedule(const SourceModel& source);

/// Transmit the coordinate whose residual against the other's representation
/// function is larger: 1 if |x1 - eta1(x2)| >= |x2 - eta2(x1)|, else 2.
int nearest_neighbor_schedule(const Eigen::Vector2d& x, const RepresentationFn& eta1,
                              const RepresentationFn& eta2);

/// 1 if (x2 - a2*x1)^2 <= (x1 - a1*x2)^2, else 2. The scheduler induced by a
/// piecewise-linear estimator with coefficients a.
int linear_induced_schedule(const Eigen::Vector2d& x, const Eigen::Vector2d& a);

/// Max-scheduling in the decorrelated coordinates W^T x.
int decorrelating_schedule(const Eigen::VectorXd& x, const Decorrelation& dec);

/// Transmitted value at its own slot, zeros elsewhere.
Eigen::VectorXd mean_estimate(const ChannelMessage& msg, int n);

/// Soft-thresholding representation function: the mean of a Gaussian with
/// mean rho*xi and variance sigma_sq*(1 - rho^2) truncated to [-|xi|, |xi|].
/// Requires sigma_sq > 0 and rho in [0, 1); returns 0 exactly when xi == 0.
double soft_threshold_eta(double xi, double sigma_sq, double rho, double abs_tol = 1e-10);

/// (xi, eta(xi)) when index 1 transmitted, (eta(xi), xi) when index 2.
Eigen::Vector2d soft_threshold_estimate(const ChannelMessage& msg, double sigma_sq, double rho);

/// E[X_j | X_i = xi, |X_j| <= |xi|] for a bivariate source: the estimate of
/// the untransmitted coordinate given that sensor i won the max-schedule.
/// Coincides with soft_threshold_eta when the variances are equal; for
/// unequal variances it is a heuristic best-response value (no optimality
/// statement attaches to it).
double conditional_mean_under_max(const SourceModel& source, int i, double xi);

/// (xi, a2*xi) when index 1 transmitted, (a1*xi, xi) when index 2.
Eigen::Vector2d pw_linear_estimate(const ChannelMessage& msg, const Eigen::Vector2d& a);

/// xi times the transmitted eigenvector: W e_i xi, the inverse decorrelating
/// transform applied to the mean estimate in transformed coordinates.
Eigen::VectorXd decorrelating_estimate(const ChannelMessage& msg, const Decorrelation& dec);

/// P(xi) = xi - eta(xi) and T(xi) = xi + eta(xi).
double aux_P(double xi, double sigma_sq, double rho);
double aux_T(double xi, double sigma_sq, double rho);

/// H(x) = (x2 - eta(x1))^2 - (x1 - eta(x2))^2; the best-response scheduler
/// for the soft-thresholding estimator picks sensor 1 iff H(x) <= 0.
double discrepancy_H(const Eigen::Vector2d& x, double sigma_sq, double rho);

// ---------------------------------------------------------------------------
// Policy objects. Immutable value types; schedule/estimate are pure.
// ---------------------------------------------------------------------------

struct MaxScheduler {};
struct OpenLoopScheduler {
    int index = 1;  // argmax variance, fixed at construction
};
struct NearestNeighborScheduler {
    RepresentationFn eta1;
    RepresentationFn eta2;
};
struct LinearInducedScheduler {
    Eigen::Vector2d a;
};
struct DecorrelatingScheduler {
    Decorrelation dec;
};

using SchedulerPolicy = std::variant<MaxScheduler, OpenLoopScheduler, NearestNeighborScheduler,
                                     LinearInducedScheduler, DecorrelatingScheduler>;

struct MeanEstimator {};
struct SoftThresholdEstimator {
    double sigma_sq = 1.0;
    double rho = 0.0;
};
struct PiecewiseLinearEstimator {
    Eigen::Vector2d a;
};
struct DecorrelatingEstimator {
    Decorrelation dec;
};
struct ConditionalMeanEstimator {
    SourceModel source;
};

using EstimatorPolicy = std::variant<MeanEstimator, SoftThresholdEstimator,
                                     PiecewiseLinearEstimator, DecorrelatingEstimator,
                                     ConditionalMeanEstimator>;

SchedulerPolicy open_loop_policy(const SourceModel& source);

int schedule(const SchedulerPolicy& policy, const Eigen::VectorXd& x);
Eigen::VectorXd estimate(const EstimatorPolicy& policy, const ChannelMessage& msg, int n);

std::string scheduler_name(const SchedulerPolicy& policy);
std::string estimator_name(const EstimatorPolicy& policy);

}  // namespace schedest
