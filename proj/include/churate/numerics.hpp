#pragma once

#include <functional>
#include <span>
#include <vector>

namespace churate::numerics {

using RealFunction = std::function<double(double)>;

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    int max_subdivisions = 200;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    int intervals = 0;
};

/// Globally adaptive 21-point Gauss-Kronrod quadrature on [lo, hi] (any finite lo < hi).
/// Initial panels are split at every breakpoint strictly inside the interval. Throws
/// ConvergenceError (with the best estimate) when the tolerance is not met within
/// spec.max_subdivisions bisections.
QuadratureResult integrate_interval(const RealFunction& fn, double lo, double hi,
                                    const QuadratureSpec& spec = {},
                                    std::span<const double> breakpoints = {});

/// Integral over a frequency band, 0 < lo < hi.
double integrate_band(const RealFunction& fn, double lo, double hi, const QuadratureSpec& spec = {},
                      std::span<const double> breakpoints = {});

/// Integral over [0, inf) through x = t/(1-t), t in (0, 1).
double integrate_semi_infinite(const RealFunction& fn, const QuadratureSpec& spec = {});

struct RootBracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;

    /// Evaluates the residual at both end points.
    static RootBracket evaluate(const RealFunction& residual, double lo, double hi);
    /// lo < hi and f_lo * f_hi <= 0; throws BracketError otherwise.
    void validate() const;
};

struct RootTolerance {
    double f_abs = 0.0;   // stop once |residual| <= f_abs
    double x_abs = 0.0;
    double x_rel = 4.0e-16;
    int max_iterations = 200;
};

/// Brent's bracketed root search (inverse quadratic interpolation with bisection
/// fallback). Deterministic for identical inputs.
double find_root(const RealFunction& residual, const RootBracket& bracket, const RootTolerance& tol = {});

/// Nodes and weights of a quadrature rule for an expectation: sum(w) == 1.
struct ExpectationRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss rule for E[g(X)], X ~ Gamma(shape, scale = 1) (generalised Gauss-Laguerre
/// via Golub-Welsch). Multiply the nodes by the scale parameter.
ExpectationRule gamma_expectation_rule(double shape, int n);

/// n-point Gauss-Legendre nodes and weights on [-1, 1] (weights sum to 2).
ExpectationRule gauss_legendre_rule(int n);

}  // namespace churate::numerics
