#include "churate/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include <Eigen/Eigenvalues>

#include "churate/errors.hpp"

namespace churate::numerics {

namespace {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525752300, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    std::size_t order;  // creation index, breaks ties deterministically
    bool refinable;
};

struct PanelLess {
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.error != b.error) return a.error < b.error;
        return a.order > b.order;
    }
};

Panel gauss_kronrod_21(const RealFunction& fn, double lo, double hi, std::size_t order) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    const double fc = fn(center);
    double res_g = 0.0;
    double res_k = kWgk[10] * fc;
    double res_abs = std::abs(res_k);
    for (int j = 0; j < 5; ++j) {
        const int jj = 2 * j + 1;
        const double dx = half * kXgk[jj];
        const double a = fn(center - dx);
        const double b = fn(center + dx);
        f1[jj] = a;
        f2[jj] = b;
        res_g += kWg[j] * (a + b);
        res_k += kWgk[jj] * (a + b);
        res_abs += kWgk[jj] * (std::abs(a) + std::abs(b));
    }
    for (int j = 0; j < 5; ++j) {
        const int jj = 2 * j;
        const double dx = half * kXgk[jj];
        const double a = fn(center - dx);
        const double b = fn(center + dx);
        f1[jj] = a;
        f2[jj] = b;
        res_k += kWgk[jj] * (a + b);
        res_abs += kWgk[jj] * (std::abs(a) + std::abs(b));
    }
    const double mean = 0.5 * res_k;
    double res_asc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double value = res_k * half;
    res_abs *= std::abs(half);
    res_asc *= std::abs(half);
    double err = std::abs((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    if (res_abs > tiny / (50.0 * eps)) err = std::max(eps * 50.0 * res_abs, err);
    if (!std::isfinite(value)) throw DomainError("quadrature: integrand is not finite on the interval");

    const double width = hi - lo;
    const double scale = std::max(std::abs(lo), std::abs(hi));
    const bool refinable = width > 64.0 * eps * scale && width > 0.0;
    return {lo, hi, value, err, order, refinable};
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0) || max_subdivisions < 1)
        throw ConfigError("quadrature spec: tolerances must be positive and max_subdivisions >= 1");
}

QuadratureResult integrate_interval(const RealFunction& fn, double lo, double hi,
                                    const QuadratureSpec& spec, std::span<const double> breakpoints) {
    spec.validate();
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("quadrature: interval must satisfy lo < hi and be finite");

    std::vector<double> edges{lo};
    std::vector<double> inner(breakpoints.begin(), breakpoints.end());
    std::sort(inner.begin(), inner.end());
    for (double b : inner)
        if (b > edges.back() && b < hi) edges.push_back(b);
    edges.push_back(hi);

    std::priority_queue<Panel, std::vector<Panel>, PanelLess> queue;
    std::vector<Panel> frozen;
    std::size_t order = 0;
    int evaluations = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        queue.push(gauss_kronrod_21(fn, edges[i], edges[i + 1], order++));
        evaluations += 21;
    }

    auto totals = [&](double& value, double& error) {
        // Summed in creation order so the result does not depend on heap layout.
        std::vector<Panel> all = frozen;
        auto copy = queue;
        while (!copy.empty()) {
            all.push_back(copy.top());
            copy.pop();
        }
        std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
        value = 0.0;
        error = 0.0;
        for (const Panel& p : all) {
            value += p.value;
            error += p.error;
        }
        return all.size();
    };

    double value = 0.0;
    double error = 0.0;
    totals(value, error);
    int subdivisions = 0;
    while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
        if (queue.empty()) {
            throw ConvergenceError("quadrature: round-off limits the attainable accuracy", value, error);
        }
        if (subdivisions >= spec.max_subdivisions) {
            throw ConvergenceError("quadrature: tolerance not met within " +
                                       std::to_string(spec.max_subdivisions) + " subdivisions",
                                   value, error);
        }
        Panel worst = queue.top();
        queue.pop();
        if (!worst.refinable) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.lo + worst.hi);
        Panel left = gauss_kronrod_21(fn, worst.lo, mid, order++);
        Panel right = gauss_kronrod_21(fn, mid, worst.hi, order++);
        evaluations += 42;
        ++subdivisions;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    const auto n = totals(value, error);
    return {value, error, evaluations, static_cast<int>(n)};
}

double integrate_band(const RealFunction& fn, double lo, double hi, const QuadratureSpec& spec,
                      std::span<const double> breakpoints) {
    if (!(lo > 0) || !(lo < hi)) throw DomainError("integrate_band: requires 0 < lo < hi");
    return integrate_interval(fn, lo, hi, spec, breakpoints).value;
}

double integrate_semi_infinite(const RealFunction& fn, const QuadratureSpec& spec) {
    auto mapped = [&fn](double t) {
        const double u = 1.0 - t;
        return fn(t / u) / (u * u);
    };
    return integrate_interval(mapped, 0.0, 1.0, spec).value;
}

RootBracket RootBracket::evaluate(const RealFunction& residual, double lo, double hi) {
    return {lo, hi, residual(lo), residual(hi)};
}

void RootBracket::validate() const {
    if (!(lo < hi)) throw BracketError("root bracket: requires lo < hi");
    if (std::isnan(f_lo) || std::isnan(f_hi)) throw BracketError("root bracket: residual is NaN at an end point");
    if (f_lo * f_hi > 0) throw BracketError("root bracket: residual has the same sign at both end points");
}

double find_root(const RealFunction& residual, const RootBracket& bracket, const RootTolerance& tol) {
    bracket.validate();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double a = bracket.lo;
    double b = bracket.hi;
    double fa = bracket.f_lo;
    double fb = bracket.f_hi;
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double c = b;
    double fc = fb;
    double d = b - a;
    double e = d;

    for (int iter = 0; iter < tol.max_iterations; ++iter) {
        if ((fb > 0 && fc > 0) || (fb < 0 && fc < 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * (tol.x_abs + tol.x_rel * std::abs(b));
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= tol.f_abs) return b;

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p;
            double q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (xm > 0 ? tol1 : -tol1);
        fb = residual(b);
        if (std::isnan(fb)) throw DomainError("find_root: residual returned NaN");
    }
    throw IterationLimitError("find_root: iteration limit reached");
}

namespace {

ExpectationRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub, double mu0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw NumericalConsistencyError("Golub-Welsch eigen solve failed");
    const auto n = diag.size();
    ExpectationRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        rule.nodes[i] = solver.eigenvalues()(i);
        const double v = solver.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v * v;
    }
    return rule;
}

}  // namespace

ExpectationRule gamma_expectation_rule(double shape, int n) {
    if (!(shape > 0) || n < 1) throw DomainError("gamma_expectation_rule: shape > 0 and n >= 1 required");
    const double alpha = shape - 1.0;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + alpha + 1.0;
    for (int i = 1; i < n; ++i) sub(i - 1) = std::sqrt(i * (i + alpha));
    return golub_welsch(diag, sub, 1.0);
}

ExpectationRule gauss_legendre_rule(int n) {
    if (n < 1) throw DomainError("gauss_legendre_rule: n >= 1 required");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int i = 1; i < n; ++i) sub(i - 1) = i / std::sqrt(4.0 * i * i - 1.0);
    return golub_welsch(diag, sub, 2.0);
}

}  // namespace churate::numerics
