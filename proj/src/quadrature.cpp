#include "schedest/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace schedest {

namespace {

// 15-point Kronrod nodes on [-1, 1] with embedded 7-point Gauss rule
// (QUADPACK dqk15 constants). Gauss nodes sit at odd indices plus the center.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double fsum = fv1[j] + fv2[j];
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[(j - 1) / 2] * fsum;
    }

    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    resasc *= std::abs(half);

    const double value = resk * half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(value));
    return {a, b, value, err};
}

}  // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_panels) {
    if (!(a <= b)) throw std::invalid_argument("integrate_gk: empty interval");
    if (a == b) return {0.0, 0.0};

    std::vector<Panel> panels{gk15(f, a, b)};
    for (;;) {
        double total = 0.0, err = 0.0;
        for (const Panel& p : panels) {
            total += p.value;
            err += p.error;
        }
        if (err <= std::max(abs_tol, rel_tol * std::abs(total))) return {total, err};
        if (static_cast<int>(panels.size()) >= max_panels)
            throw QuadratureFailure("integrate_gk: tolerance not reached at max refinement");

        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].error > panels[worst].error) worst = i;
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(p.a < mid && mid < p.b))
            throw QuadratureFailure("integrate_gk: interval underflow before tolerance");
        panels[worst] = gk15(f, p.a, mid);
        panels.push_back(gk15(f, mid, p.b));
    }
}

double truncated_gaussian_mean(double lo, double hi, double mean, double var, double abs_tol) {
    if (!(var > 0.0)) throw std::invalid_argument("truncated_gaussian_mean: var must be positive");
    if (!(lo <= hi)) throw std::invalid_argument("truncated_gaussian_mean: empty interval");
    if (lo == hi) return lo;

    const double sd = std::sqrt(var);
    double a = (lo - mean) / sd;
    double b = (hi - mean) / sd;

    if (a <= -12.0 && b >= 12.0) return std::clamp(mean, lo, hi);

    // Beyond ~13.6 sd the standardized density is < 1e-41 of the peak; the
    // clipped tail cannot move the mean at the requested tolerance.
    a = std::max(a, -13.6);
    b = std::min(b, 13.6);
    if (!(a < b)) return std::clamp(mean, lo, hi);

    auto kernel = [](double z) { return std::exp(-0.5 * z * z); };
    auto moment = [&kernel](double z) { return z * kernel(z); };

    const QuadResult den = integrate_gk(kernel, a, b, 0.0, 1e-13);
    const QuadResult num = integrate_gk(moment, a, b, std::max(1e-13 * den.value, 0.0), 1e-13);

    const double ratio = num.value / den.value;
    const double err = sd * (num.error + std::abs(ratio) * den.error) / den.value;
    if (!(err <= abs_tol))
        throw QuadratureFailure("truncated_gaussian_mean: tolerance not reached");
    return std::clamp(mean + sd * ratio, lo, hi);
}

GaussHermiteRule gauss_hermite_normal(int order) {
    if (order < 1) throw std::invalid_argument("gauss_hermite_normal: order must be >= 1");

    // Golub-Welsch on the Hermite Jacobi matrix (weight exp(-x^2)):
    // zero diagonal, off-diagonal sqrt(k/2).
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(order > 1 ? order - 1 : 0);
    for (int k = 1; k < order; ++k) sub(k - 1) = std::sqrt(0.5 * k);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("gauss_hermite_normal: eigensolver failed");

    GaussHermiteRule rule;
    rule.nodes = std::numbers::sqrt2 * solver.eigenvalues();
    rule.weights = solver.eigenvectors().row(0).transpose().array().square();
    rule.weights /= rule.weights.sum();
    return rule;
}

}  // namespace schedest
