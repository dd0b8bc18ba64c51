#pragma once

#include <cstdint>

#include "schedest/policies.hpp"
#include "schedest/sampling.hpp"

namespace schedest {

enum class EvalMethod { MonteCarlo, Quadrature, ClosedForm };

/// Result of one cost evaluation. stderr_val is zero unless the method is
/// Monte Carlo.
struct EvalReport {
    double cost = 0.0;
    double stderr_val = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    EvalMethod method = EvalMethod::MonteCarlo;
};

struct EvalConfig {
    EvalMethod method = EvalMethod::MonteCarlo;
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 12345;
    int quad_order = 128;
    int threads = 0;  // 0 = hardware default
};

/// Seeded Monte Carlo estimate of E[|x - xhat|^2] for the policy pair.
/// Chunked with per-chunk substream seeds and a fixed pairwise reduction, so
/// the report is bit-identical for any thread count. Requires samples >= 1e4.
EvalReport evaluate_cost_mc(const SourceModel& source, const SchedulerPolicy& scheduler,
                            const EstimatorPolicy& estimator, std::int64_t samples,
                            std::uint64_t seed, int threads = 0);

/// Tensor-product Gauss-Hermite evaluation of the same expectation (bivariate
/// sources only). The grid is mapped through the Cholesky factor and pushed
/// pointwise through the scheduler; no analytic region splitting.
/// Requires order >= 64.
EvalReport evaluate_cost_quadrature(const SourceModel& source, const SchedulerPolicy& scheduler,
                                    const EstimatorPolicy& estimator, int order);

EvalReport evaluate_cost(const SourceModel& source, const SchedulerPolicy& scheduler,
                         const EstimatorPolicy& estimator, const EvalConfig& config);

/// A frozen weighted point set over which the difference-of-convex pieces are
/// evaluated: Monte Carlo samples (uniform weights) or a Gauss-Hermite grid.
/// Providing one set to a whole optimization run realizes common random
/// numbers. Bivariate sources only.
struct PointSet {
    Eigen::VectorXd x1;
    Eigen::VectorXd x2;
    Eigen::VectorXd weights;  // empty => uniform 1/size()
    bool is_mc = true;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    int order = 0;

    std::int64_t size() const { return x1.size(); }

    static PointSet monte_carlo(const SourceModel& source, std::int64_t count,
                                std::uint64_t seed);
    static PointSet gauss_hermite(const SourceModel& source, int order);
};

/// All difference-of-convex quantities at one coefficient vector, from a
/// single weighted pass: Jq = E[min], G = E[max], their sample stderrs (zero
/// for weighted grids), the empirical F = Jq + G, and the subgradient of G.
struct DcTerms {
    double jq = 0.0;
    double g = 0.0;
    double f_mc = 0.0;
    double jq_stderr = 0.0;
    double g_stderr = 0.0;
    Eigen::Vector2d subgrad{0.0, 0.0};
};

DcTerms evaluate_dc_terms(const PointSet& set, const Eigen::Vector2d& a, int threads = 0);

/// Jq(a) = E[min{(X1 - a1 X2)^2, (X2 - a2 X1)^2}].
EvalReport jq(const Eigen::Vector2d& a, const SourceModel& source, const EvalConfig& config);

/// F(a) = (1 + a2^2) s1^2 + (1 + a1^2) s2^2 - 2 cov12 (a1 + a2), exact.
double F_analytic(const Eigen::Vector2d& a, const SourceModel& source);

/// G(a) = E[max{(X1 - a1 X2)^2, (X2 - a2 X1)^2}].
EvalReport G_eval(const Eigen::Vector2d& a, const SourceModel& source, const EvalConfig& config);

/// min{sigma1^2, sigma2^2}: the open-loop/mean-estimation cost.
double closed_form_open_loop(const SourceModel& source);

}  // namespace schedest
