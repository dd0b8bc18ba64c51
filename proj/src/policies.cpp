#include "schedest/policies.hpp"

#include <cmath>

#include "schedest/quadrature.hpp"

namespace schedest {

namespace {

void require_rho_regime(double rho) {
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::invalid_argument("soft-thresholding requires rho in [0, 1)");
}

void require_sigma(double sigma_sq) {
    if (!(sigma_sq > 0.0)) throw std::invalid_argument("sigma_sq must be positive");
}

}  // namespace

int max_schedule(const Eigen::VectorXd& x) {
    if (x.size() < 2) throw DimTooSmallError("max_schedule: need at least two coordinates");
    int best = 0;
    for (int i = 1; i < x.size(); ++i)
        if (std::abs(x(i)) > std::abs(x(best))) best = i;
    return best + 1;
}

int open_loop_schedule(const SourceModel& source) {
    int best = 0;
    for (int i = 1; i < source.dim(); ++i)
        if (source.cov()(i, i) > source.cov()(best, best)) best = i;
    return best + 1;
}

int nearest_neighbor_schedule(const Eigen::Vector2d& x, const RepresentationFn& eta1,
                              const RepresentationFn& eta2) {
    const double r1 = std::abs(x(0) - eta1(x(1)));
    const double r2 = std::abs(x(1) - eta2(x(0)));
    return r1 >= r2 ? 1 : 2;
}

int linear_induced_schedule(const Eigen::Vector2d& x, const Eigen::Vector2d& a) {
    const double r1 = x(1) - a(1) * x(0);
    const double r2 = x(0) - a(0) * x(1);
    return r1 * r1 <= r2 * r2 ? 1 : 2;
}

int decorrelating_schedule(const Eigen::VectorXd& x, const Decorrelation& dec) {
    if (x.size() != dec.w.rows())
        throw UnsupportedDimError("decorrelating_schedule: dimension mismatch");
    return max_schedule(dec.w.transpose() * x);
}

Eigen::VectorXd mean_estimate(const ChannelMessage& msg, int n) {
    if (msg.index < 1 || msg.index > n)
        throw IndexError("mean_estimate: message index outside {1..n}");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    out(msg.index - 1) = msg.value;
    return out;
}

double soft_threshold_eta(double xi, double sigma_sq, double rho, double abs_tol) {
    require_sigma(sigma_sq);
    require_rho_regime(rho);
    if (xi == 0.0) return 0.0;
    const double bound = std::abs(xi);
    return truncated_gaussian_mean(-bound, bound, rho * xi, sigma_sq * (1.0 - rho * rho),
                                   abs_tol);
}

Eigen::Vector2d soft_threshold_estimate(const ChannelMessage& msg, double sigma_sq, double rho) {
    if (msg.index != 1 && msg.index != 2)
        throw IndexError("soft_threshold_estimate: message index outside {1, 2}");
    const double eta = soft_threshold_eta(msg.value, sigma_sq, rho);
    if (msg.index == 1) return {msg.value, eta};
    return {eta, msg.value};
}

double conditional_mean_under_max(const SourceModel& source, int i, double xi) {
    if (source.dim() != 2)
        throw UnsupportedDimError("conditional_mean_under_max: bivariate sources only");
    if (i != 1 && i != 2) throw IndexError("conditional_mean_under_max: index outside {1, 2}");
    if (xi == 0.0) return 0.0;

    const int j = 3 - i;
    const ConditionalLaw law = conditional_law(source, j, i, xi);
    const double bound = std::abs(xi);
    return truncated_gaussian_mean(-bound, bound, law.mean, law.var);
}

Eigen::Vector2d pw_linear_estimate(const ChannelMessage& msg, const Eigen::Vector2d& a) {
    if (msg.index != 1 && msg.index != 2)
        throw IndexError("pw_linear_estimate: message index outside {1, 2}");
    if (msg.index == 1) return {msg.value, a(1) * msg.value};
    return {a(0) * msg.value, msg.value};
}

Eigen::VectorXd decorrelating_estimate(const ChannelMessage& msg, const Decorrelation& dec) {
    const int n = static_cast<int>(dec.w.rows());
    if (msg.index < 1 || msg.index > n)
        throw IndexError("decorrelating_estimate: message index outside {1..n}");
    return dec.w * mean_estimate(msg, n);
}

double aux_P(double xi, double sigma_sq, double rho) {
    return xi - soft_threshold_eta(xi, sigma_sq, rho);
}

double aux_T(double xi, double sigma_sq, double rho) {
    return xi + soft_threshold_eta(xi, sigma_sq, rho);
}

double discrepancy_H(const Eigen::Vector2d& x, double sigma_sq, double rho) {
    const double d1 = x(1) - soft_threshold_eta(x(0), sigma_sq, rho);
    const double d2 = x(0) - soft_threshold_eta(x(1), sigma_sq, rho);
    return d1 * d1 - d2 * d2;
}

SchedulerPolicy open_loop_policy(const SourceModel& source) {
    return OpenLoopScheduler{open_loop_schedule(source)};
}

int schedule(const SchedulerPolicy& policy, const Eigen::VectorXd& x) {
    return std::visit(
        [&x](const auto& p) -> int {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, MaxScheduler>) {
                return max_schedule(x);
            } else if constexpr (std::is_same_v<P, OpenLoopScheduler>) {
                return p.index;
            } else if constexpr (std::is_same_v<P, NearestNeighborScheduler>) {
                return nearest_neighbor_schedule(x.head<2>(), p.eta1, p.eta2);
            } else if constexpr (std::is_same_v<P, LinearInducedScheduler>) {
                return linear_induced_schedule(x.head<2>(), p.a);
            } else {
                return decorrelating_schedule(x, p.dec);
            }
        },
        policy);
}

Eigen::VectorXd estimate(const EstimatorPolicy& policy, const ChannelMessage& msg, int n) {
    return std::visit(
        [&msg, n](const auto& p) -> Eigen::VectorXd {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, MeanEstimator>) {
                return mean_estimate(msg, n);
            } else if constexpr (std::is_same_v<P, SoftThresholdEstimator>) {
                return soft_threshold_estimate(msg, p.sigma_sq, p.rho);
            } else if constexpr (std::is_same_v<P, PiecewiseLinearEstimator>) {
                return pw_linear_estimate(msg, p.a);
            } else if constexpr (std::is_same_v<P, DecorrelatingEstimator>) {
                return decorrelating_estimate(msg, p.dec);
            } else {
                const double other = conditional_mean_under_max(p.source, msg.index, msg.value);
                Eigen::Vector2d out;
                out(msg.index - 1) = msg.value;
                out(2 - msg.index) = other;
                return out;
            }
        },
        policy);
}

std::string scheduler_name(const SchedulerPolicy& policy) {
    switch (policy.index()) {
        case 0: return "max";
        case 1: return "open-loop";
        case 2: return "nearest-neighbor";
        case 3: return "linear-induced";
        default: return "decorrelating";
    }
}

std::string estimator_name(const EstimatorPolicy& policy) {
    switch (policy.index()) {
        case 0: return "mean";
        case 1: return "soft-threshold";
        case 2: return "piecewise-linear";
        case 3: return "decorrelating";
        default: return "conditional-mean";
    }
}

}  // namespace schedest
