#include "schedest/cost_eval.hpp"

#include <cmath>

#include "schedest/quadrature.hpp"

namespace schedest {

namespace {

struct MomentAcc {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t count = 0;
};

MomentAcc merge(const MomentAcc& a, const MomentAcc& b) {
    return {a.sum + b.sum, a.sum_sq + b.sum_sq, a.count + b.count};
}

EvalReport report_from(const MomentAcc& acc, std::uint64_t seed) {
    EvalReport rep;
    rep.method = EvalMethod::MonteCarlo;
    rep.samples = acc.count;
    rep.seed = seed;
    rep.cost = acc.sum / static_cast<double>(acc.count);
    if (acc.count > 1) {
        const double var =
            (acc.sum_sq - acc.sum * acc.sum / static_cast<double>(acc.count)) /
            static_cast<double>(acc.count - 1);
        rep.stderr_val = std::sqrt(std::max(var, 0.0) / static_cast<double>(acc.count));
    }
    return rep;
}

double pair_cost(const SchedulerPolicy& scheduler, const EstimatorPolicy& estimator,
                 const Eigen::VectorXd& x) {
    const int idx = schedule(scheduler, x);
    const ChannelMessage msg{idx, x(idx - 1)};
    const Eigen::VectorXd xhat = estimate(estimator, msg, static_cast<int>(x.size()));
    return (x - xhat).squaredNorm();
}

}  // namespace

EvalReport evaluate_cost_mc(const SourceModel& source, const SchedulerPolicy& scheduler,
                            const EstimatorPolicy& estimator, std::int64_t samples,
                            std::uint64_t seed, int threads) {
    if (samples < 10'000)
        throw std::invalid_argument("evaluate_cost_mc: need at least 1e4 samples");

    const std::int64_t chunks = num_sample_chunks(samples);
    std::vector<MomentAcc> per_chunk(chunks);
    parallel_for_index(
        chunks,
        [&](std::int64_t c) {
            const Eigen::MatrixXd block = sample_chunk(source, samples, seed, c);
            MomentAcc acc;
            Eigen::VectorXd row(source.dim());
            for (Eigen::Index r = 0; r < block.rows(); ++r) {
                row = block.row(r);
                const double v = pair_cost(scheduler, estimator, row);
                acc.sum += v;
                acc.sum_sq += v * v;
            }
            acc.count = block.rows();
            per_chunk[c] = acc;
        },
        threads);

    return report_from(reduce_pairwise(std::move(per_chunk), merge), seed);
}

EvalReport evaluate_cost_quadrature(const SourceModel& source, const SchedulerPolicy& scheduler,
                                    const EstimatorPolicy& estimator, int order) {
    if (source.dim() != 2)
        throw UnsupportedDimError("evaluate_cost_quadrature: bivariate sources only");
    if (order < 64) throw std::invalid_argument("evaluate_cost_quadrature: order must be >= 64");

    const GaussHermiteRule rule = gauss_hermite_normal(order);
    const Eigen::Matrix2d chol = source.chol_lower();

    double total = 0.0;
    Eigen::VectorXd x(2);
    for (int i = 0; i < order; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < order; ++j) {
            x(0) = chol(0, 0) * rule.nodes(i);
            x(1) = chol(1, 0) * rule.nodes(i) + chol(1, 1) * rule.nodes(j);
            row_sum += rule.weights(j) * pair_cost(scheduler, estimator, x);
        }
        total += rule.weights(i) * row_sum;
    }

    EvalReport rep;
    rep.method = EvalMethod::Quadrature;
    rep.cost = total;
    rep.samples = static_cast<std::int64_t>(order) * order;
    return rep;
}

EvalReport evaluate_cost(const SourceModel& source, const SchedulerPolicy& scheduler,
                         const EstimatorPolicy& estimator, const EvalConfig& config) {
    switch (config.method) {
        case EvalMethod::MonteCarlo:
            return evaluate_cost_mc(source, scheduler, estimator, config.samples, config.seed,
                                    config.threads);
        case EvalMethod::Quadrature:
            return evaluate_cost_quadrature(source, scheduler, estimator, config.quad_order);
        case EvalMethod::ClosedForm: {
            if (!std::holds_alternative<OpenLoopScheduler>(scheduler) ||
                !std::holds_alternative<MeanEstimator>(estimator))
                throw std::invalid_argument(
                    "evaluate_cost: closed form available for the open-loop/mean pair only");
            EvalReport rep;
            rep.method = EvalMethod::ClosedForm;
            rep.cost = closed_form_open_loop(source);
            return rep;
        }
    }
    throw std::invalid_argument("evaluate_cost: unknown method");
}

PointSet PointSet::monte_carlo(const SourceModel& source, std::int64_t count,
                               std::uint64_t seed) {
    if (source.dim() != 2) throw UnsupportedDimError("PointSet: bivariate sources only");
    if (count < 1) throw std::invalid_argument("PointSet: count must be >= 1");
    const Eigen::MatrixXd draws = sample(source, count, seed);
    PointSet set;
    set.x1 = draws.col(0);
    set.x2 = draws.col(1);
    set.is_mc = true;
    set.samples = count;
    set.seed = seed;
    return set;
}

PointSet PointSet::gauss_hermite(const SourceModel& source, int order) {
    if (source.dim() != 2) throw UnsupportedDimError("PointSet: bivariate sources only");
    const GaussHermiteRule rule = gauss_hermite_normal(order);
    const Eigen::Matrix2d chol = source.chol_lower();

    const std::int64_t n = static_cast<std::int64_t>(order) * order;
    PointSet set;
    set.x1.resize(n);
    set.x2.resize(n);
    set.weights.resize(n);
    std::int64_t k = 0;
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j, ++k) {
            set.x1(k) = chol(0, 0) * rule.nodes(i);
            set.x2(k) = chol(1, 0) * rule.nodes(i) + chol(1, 1) * rule.nodes(j);
            set.weights(k) = rule.weights(i) * rule.weights(j);
        }
    }
    set.is_mc = false;
    set.samples = n;
    set.order = order;
    return set;
}

DcTerms evaluate_dc_terms(const PointSet& set, const Eigen::Vector2d& a, int threads) {
    const std::int64_t n = set.size();
    if (n == 0) throw std::invalid_argument("evaluate_dc_terms: empty point set");
    const bool uniform = set.weights.size() == 0;
    const double a1 = a(0), a2 = a(1);

    struct Acc {
        double min_sum = 0, min_sq = 0, max_sum = 0, max_sq = 0, g1 = 0, g2 = 0;
    };
    auto merge_acc = [](const Acc& u, const Acc& v) {
        return Acc{u.min_sum + v.min_sum, u.min_sq + v.min_sq, u.max_sum + v.max_sum,
                   u.max_sq + v.max_sq,   u.g1 + v.g1,         u.g2 + v.g2};
    };

    const std::int64_t chunks = (n + kSampleChunkRows - 1) / kSampleChunkRows;
    std::vector<Acc> per_chunk(chunks);
    parallel_for_index(
        chunks,
        [&](std::int64_t c) {
            const std::int64_t begin = c * kSampleChunkRows;
            const std::int64_t end = std::min(begin + kSampleChunkRows, n);
            Acc acc;
            for (std::int64_t k = begin; k < end; ++k) {
                const double x1 = set.x1(k), x2 = set.x2(k);
                const double w = uniform ? 1.0 : set.weights(k);
                const double r1 = x1 - a1 * x2;  // residual when sensor 2 transmits
                const double r2 = x2 - a2 * x1;  // residual when sensor 1 transmits
                const double q1 = r1 * r1, q2 = r2 * r2;
                const double lo = q1 < q2 ? q1 : q2;
                const double hi = q1 < q2 ? q2 : q1;
                acc.min_sum += w * lo;
                acc.min_sq += w * lo * lo;
                acc.max_sum += w * hi;
                acc.max_sq += w * hi * hi;
                // Ties feed the first branch, matching the indicator choice
                // |X1 - a1 X2| >= |X2 - a2 X1|.
                if (q1 >= q2)
                    acc.g1 += w * r1 * x2;
                else
                    acc.g2 += w * r2 * x1;
            }
            per_chunk[c] = acc;
        },
        threads);

    const Acc acc = reduce_pairwise(std::move(per_chunk), merge_acc);
    const double norm = uniform ? static_cast<double>(n) : 1.0;

    DcTerms terms;
    terms.jq = acc.min_sum / norm;
    terms.g = acc.max_sum / norm;
    terms.f_mc = terms.jq + terms.g;
    terms.subgrad = {-2.0 * acc.g1 / norm, -2.0 * acc.g2 / norm};
    if (set.is_mc && n > 1) {
        const double nd = static_cast<double>(n);
        const double var_min = (acc.min_sq - acc.min_sum * acc.min_sum / nd) / (nd - 1.0);
        const double var_max = (acc.max_sq - acc.max_sum * acc.max_sum / nd) / (nd - 1.0);
        terms.jq_stderr = std::sqrt(std::max(var_min, 0.0) / nd);
        terms.g_stderr = std::sqrt(std::max(var_max, 0.0) / nd);
    }
    return terms;
}

namespace {

PointSet set_from_config(const SourceModel& source, const EvalConfig& config) {
    if (config.method == EvalMethod::Quadrature)
        return PointSet::gauss_hermite(source, config.quad_order);
    return PointSet::monte_carlo(source, config.samples, config.seed);
}

EvalReport dc_report(const PointSet& set, double value, double stderr_val) {
    EvalReport rep;
    rep.cost = value;
    rep.samples = set.samples;
    if (set.is_mc) {
        rep.method = EvalMethod::MonteCarlo;
        rep.seed = set.seed;
        rep.stderr_val = stderr_val;
    } else {
        rep.method = EvalMethod::Quadrature;
    }
    return rep;
}

}  // namespace

EvalReport jq(const Eigen::Vector2d& a, const SourceModel& source, const EvalConfig& config) {
    const PointSet set = set_from_config(source, config);
    const DcTerms terms = evaluate_dc_terms(set, a, config.threads);
    return dc_report(set, terms.jq, terms.jq_stderr);
}

double F_analytic(const Eigen::Vector2d& a, const SourceModel& source) {
    if (source.dim() != 2) throw UnsupportedDimError("F_analytic: bivariate sources only");
    const double s1 = source.cov()(0, 0);
    const double s2 = source.cov()(1, 1);
    const double c12 = source.cov()(0, 1);
    return (1.0 + a(1) * a(1)) * s1 + (1.0 + a(0) * a(0)) * s2 - 2.0 * c12 * (a(0) + a(1));
}

EvalReport G_eval(const Eigen::Vector2d& a, const SourceModel& source, const EvalConfig& config) {
    const PointSet set = set_from_config(source, config);
    const DcTerms terms = evaluate_dc_terms(set, a, config.threads);
    return dc_report(set, terms.g, terms.g_stderr);
}

double closed_form_open_loop(const SourceModel& source) {
    if (source.dim() != 2)
        throw UnsupportedDimError("closed_form_open_loop: bivariate sources only");
    return std::min(source.cov()(0, 0), source.cov()(1, 1));
}

}  // namespace schedest
