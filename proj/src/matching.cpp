#include "churate/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "churate/errors.hpp"

namespace churate::matching {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
constexpr double kPi4 = kPi2 * kPi2;

// T* from the SNR-normalised quantities sigma = S/N_LNA, nu = N0/N_LNA and the multiplier
// weight w = m1 f^-2 + m2 f^-4. Coefficients are divided by N_LNA^2.
Transmission solve_normalised(double sigma, double nu, double w) {
    if (!(sigma > w)) return {0.0, 1.0};
    const double c1 = -(nu + sigma) * nu * w;
    const double c2 = -(2.0 * nu + sigma) * w - sigma;
    const double c3 = sigma - w;
    // c1 <= 0 < c3, so the discriminant is at least c2^2.
    const double disc = c2 * c2 - 4.0 * c1 * c3;
    double t = 2.0 * c3 / (-c2 + std::sqrt(disc));
    double om = 1.0 - t;
    if (t > 0.5) om = w * ((nu + sigma) * t + 1.0) * (nu * t + 1.0) / sigma;
    if (om < kTransmissionCap) {
        om = kTransmissionCap;
        t = 1.0 - kTransmissionCap;
    }
    return {t, om};
}

void require_lna_noise(const Link& link) {
    if (!(link.n_lna > 0))
        throw DomainError("optimal transmission requires N_LNA > 0 (noise_factor > 1)");
}

// Band, channel and multipliers rescaled by the band centre fr: u = f/fr, n1 = m1/fr^2,
// n2 = m2/fr^4, sigma(u) = q/u^2. Keeps the f^-4 integrals O(1).
struct Scaled {
    double fr;
    double q;
    double nu;
    double u1;
    double u2;

    explicit Scaled(const Link& link) {
        require_lna_noise(link);
        fr = 0.5 * (link.band_lo + link.band_hi);
        q = link.emax * link.friis_coeff / link.n_lna / (fr * fr);
        nu = link.n0 / link.n_lna;
        u1 = link.band_lo / fr;
        u2 = link.band_hi / fr;
    }

    double log_gain(double u, double n1, double n2) const {
        const double iu2 = 1.0 / (u * u);
        return solve_normalised(q * iu2, nu, (n1 + n2 * iu2) * iu2).log_gain();
    }

    double edge(double n1, double n2) const {
        if (!(q > n1)) return std::numeric_limits<double>::infinity();
        return std::sqrt(n2 / (q - n1));
    }

    template <int Power>
    double integral(double n1, double n2, const numerics::QuadratureSpec& spec) const {
        const double lo = std::max(u1, edge(n1, n2));
        if (!(lo < u2)) return 0.0;
        auto fn = [&](double u) {
            const double iu2 = 1.0 / (u * u);
            const double weight = Power == 2 ? iu2 : iu2 * iu2;
            return weight * log_gain(u, n1, n2);
        };
        return numerics::integrate_interval(fn, lo, u2, spec).value;
    }
};

std::vector<double> uniform_points(double lo, double hi, std::size_t n) {
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i)
        pts[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    if (n > 1) pts.back() = hi;
    return pts;
}

// Monotone decreasing residual phi on a log lattice: starting from `start` (where phi may
// have either sign) walk towards the sign change, never above `top` where phi(top) < 0.
numerics::RootBracket bracket_decreasing(const numerics::RealFunction& phi, double top, double start,
                                         const SolverOptions& opts,
                                         std::vector<std::pair<double, double>>& trace) {
    const double step = std::log(10.0) / opts.points_per_decade;
    const int max_steps = static_cast<int>(std::ceil(opts.scan_decades * opts.points_per_decade));
    double x = std::min(start, top);
    double fx = x == top ? -1.0 : phi(x);
    trace.emplace_back(x, fx);
    if (fx > 0) {
        for (int i = 0; i < max_steps; ++i) {
            const double xn = std::min(x + step, top);
            const double fn = xn == top ? -1.0 : phi(xn);
            trace.emplace_back(xn, fn);
            if (fn <= 0) return {x, xn, fx, fn};
            x = xn;
            fx = fn;
        }
    } else {
        for (int i = 0; i < max_steps; ++i) {
            const double xn = x - step;
            const double fn = phi(xn);
            trace.emplace_back(xn, fn);
            if (fn >= 0) return {xn, x, fn, fx};
            x = xn;
            fx = fn;
        }
    }
    throw InfeasibleError("matching solver: no sign change found on the log lattice", trace);
}

struct Solver {
    const Link& link;
    Scaled sc;
    double alpha;  // target_a * fr / c
    const SolverOptions& opts;
    int evaluations = 0;
    double hint_log_n2 = std::numeric_limits<double>::quiet_NaN();
    double j2_cap = 0.0;  // integrals of the capped profile T = 1 (zero multipliers)
    double j4_cap = 0.0;

    Solver(const Link& l, double target_a, const SolverOptions& o)
        : link(l), sc(l), alpha(target_a * sc.fr / l.c), opts(o) {}

    double j2(double n1, double n2) {
        ++evaluations;
        return sc.integral<2>(n1, n2, opts.quadrature);
    }
    double j4(double n1, double n2) {
        ++evaluations;
        return sc.integral<4>(n1, n2, opts.quadrature);
    }

    double k1(double g) const { return 4.0 * kPi2 * (alpha - g); }
    double k2(double g) const { return 8.0 * kPi4 * (4.0 * alpha * alpha * alpha / 3.0 + 2.0 * g * g * g / 3.0); }

    static numerics::RootTolerance tight() {
        numerics::RootTolerance tol;
        tol.f_abs = 1e-11;
        tol.x_abs = 1e-14;
        tol.x_rel = 1e-15;
        tol.max_iterations = 300;
        return tol;
    }

    // Scale s of the multiplier direction (d1, d2) at which the f^-4 integral equals k.
    double solve_scale(double d1, double d2, double k, double hint) {
        const double top = std::log(sc.q / (d1 + d2 / (sc.u2 * sc.u2)));
        auto phi = [&](double l) {
            const double s = std::exp(l);
            return j4(s * d1, s * d2) / k - 1.0;
        };
        std::vector<std::pair<double, double>> trace;
        const double start = std::isfinite(hint) ? hint : top;
        const auto br = bracket_decreasing(phi, top, start, opts, trace);
        return find_root(phi, br, tight());
    }

    // Multiplier scale n2 (with n1 = (2 pi g)^2 n2) exhausting the f^-4 budget; 0 when the
    // budget is slack even for the capped profile T = 1.
    double inner_n2(double g) {
        if (j4_cap <= k2(g)) return 0.0;
        const double r = 4.0 * kPi2 * g * g;
        const double l = solve_scale(r, 1.0, k2(g), hint_log_n2);
        hint_log_n2 = l;
        return std::exp(l);
    }

    MatchingSolution solve(double target_a) {
        MatchingSolution sol;
        sol.target_a = target_a;
        sol.link = link;

        j2_cap = j2(0.0, 0.0);
        j4_cap = j4(0.0, 0.0);
        double n1 = 0.0;
        double n2 = 0.0;
        double g = 0.0;

        // Both budgets admit the capped profile for some reflection zero g in [g_lo, g_hi].
        const double g_lo = std::cbrt(std::max(0.0, 1.5 * (j4_cap / (8.0 * kPi4) - 4.0 * alpha * alpha * alpha / 3.0)));
        const double g_hi = alpha - j2_cap / (4.0 * kPi2);
        if (g_lo <= g_hi) {
            sol.regime = Regime::unconstrained;
            g = g_lo;
        } else if (j4_cap <= k2(0.0)) {
            solve_boundary(n1, n2);
            sol.regime = Regime::boundary;
        } else {
            auto psi = [&](double log_h) {
                const double h = std::exp(log_h);
                const double gg = alpha - h;
                const double m = inner_n2(gg);
                const double i2 = m == 0.0 ? j2_cap : j2(4.0 * kPi2 * gg * gg * m, m);
                return i2 / (4.0 * kPi2 * h) - 1.0;
            };
            const double top = std::log(alpha);
            const double psi_top = psi(top);
            if (psi_top <= 0) {
                std::vector<std::pair<double, double>> trace{{top, psi_top}};
                const double step = std::log(10.0) / opts.points_per_decade;
                const double floor = top + std::log(1e-15);
                double x = top;
                double fx = psi_top;
                numerics::RootBracket br{top, top, 0.0, 0.0};
                bool found = psi_top == 0.0;
                while (!found) {
                    const double xn = x - step;
                    if (xn < floor) throw InfeasibleError("matching solver: no interior reflection zero", trace);
                    const double fn = psi(xn);
                    trace.emplace_back(xn, fn);
                    if (fn >= 0) {
                        br = {xn, x, fn, fx};
                        found = true;
                    }
                    x = xn;
                    fx = fn;
                }
                const double lh = br.lo == br.hi ? br.lo : find_root(psi, br, tight());
                g = alpha - std::exp(lh);
                n2 = inner_n2(g);
                if (!(n2 > 0)) throw NumericalConsistencyError("matching solver: interior root with zero multipliers");
                n1 = 4.0 * kPi2 * g * g * n2;
                sol.regime = Regime::interior;
            } else {
                solve_boundary(n1, n2);
                sol.regime = Regime::boundary;
            }
        }

        const double fr = sc.fr;
        sol.multipliers = {n1 * fr * fr, n2 * fr * fr * fr * fr};
        const double i2 = j2(n1, n2) / fr;
        switch (sol.regime) {
            case Regime::interior:
                sol.gamma = gamma_opt(sol.multipliers);
                sol.achieved_a = link.c * i2 / (4.0 * kPi2) + link.c / sol.gamma;
                break;
            case Regime::boundary:
                sol.gamma = chu::kNoReflectionZero;
                sol.achieved_a = link.c * i2 / (4.0 * kPi2);
                break;
            case Regime::unconstrained:
                // Size is not pinned by the multipliers; report the target.
                sol.gamma = g > 0 ? fr / g : chu::kNoReflectionZero;
                sol.achieved_a = target_a;
                break;
        }
        sol.edge_hz = support_edge(link, sol.multipliers);
        for (double f : uniform_points(link.band_lo, link.band_hi, opts.samples))
            sol.t_star_samples.emplace_back(f, sol.t_star(f));
        sol.residuals.size_eq = (sol.achieved_a - target_a) / target_a;
        const double i4 = j4(n1, n2) / (fr * fr * fr);
        sol.residuals.constraint_eq = i4 / sol.budget().k2 - 1.0;
        sol.evaluations = evaluations;
        return sol;
    }

    // 1/gamma = 0. First with the f^-4 constraint slack (n2 = 0), then with both active along
    // the direction (cos th, sin th).
    void solve_boundary(double& n1, double& n2) {
        const double kk1 = k1(0.0);
        const double kk2 = k2(0.0);
        std::vector<std::pair<double, double>> trace;
        auto phi1 = [&](double l) { return j2(std::exp(l), 0.0) / kk1 - 1.0; };
        const double top = std::log(sc.q);
        const auto br = bracket_decreasing(phi1, top, top, opts, trace);
        const double l1 = find_root(phi1, br, tight());
        if (j4(std::exp(l1), 0.0) <= kk2 * (1.0 + 1e-12)) {
            n1 = std::exp(l1);
            n2 = 0.0;
            return;
        }
        double hint = std::numeric_limits<double>::quiet_NaN();
        auto chi = [&](double th) {
            const double d1 = std::cos(th);
            const double d2 = std::sin(th);
            hint = solve_scale(d1, d2, kk2, hint);
            const double s = std::exp(hint);
            return j2(s * d1, s * d2) / kk1 - 1.0;
        };
        const auto tb = numerics::RootBracket::evaluate(chi, 0.0, 0.5 * kPi);
        const double th = find_root(chi, tb, tight());
        const double s = std::exp(solve_scale(std::cos(th), std::sin(th), kk2, hint));
        n1 = s * std::cos(th);
        n2 = s * std::sin(th);
    }
};

}  // namespace

void Multipliers::validate() const {
    if (!(m1 >= 0) || !(m2 >= 0) || !std::isfinite(m1) || !std::isfinite(m2))
        throw DomainError("multiplier magnitudes must be finite and non-negative");
}

double Transmission::log_gain() const {
    return t <= 0.5 ? -std::log1p(-t) : -std::log(one_minus_t);
}

QuadraticCoeffs quadratic_coeffs(const Link& link, double f, const Multipliers& mult) {
    if (!(f > 0)) throw DomainError("quadratic_coeffs: frequency must be positive");
    mult.validate();
    const double s = link.signal(f);
    const double n0 = link.n0;
    const double nl = link.n_lna;
    // Signed multipliers -m1, -m2.
    const double w = -(mult.m1 / (f * f) + mult.m2 / (f * f * f * f));
    return {(n0 + s) * n0 * w, (2.0 * n0 * nl + nl * s) * w - s * nl, s * nl + nl * nl * w};
}

QuadraticCoeffs quadratic_coeffs(const SystemConfig& cfg, double f, const Multipliers& mult) {
    return quadratic_coeffs(Link(cfg), f, mult);
}

Transmission transmission(const Link& link, double f, const Multipliers& mult) {
    if (!(f > 0)) throw DomainError("optimal_transmission: frequency must be positive");
    require_lna_noise(link);
    const double sigma = link.signal(f) / link.n_lna;
    if (sigma == 0.0) return {0.0, 1.0};
    const double w = mult.m1 / (f * f) + mult.m2 / (f * f * f * f);
    return solve_normalised(sigma, link.n0 / link.n_lna, w);
}

double optimal_transmission(const Link& link, double f, const Multipliers& mult) {
    mult.validate();
    return transmission(link, f, mult).t;
}

double optimal_transmission(const SystemConfig& cfg, double f, const Multipliers& mult) {
    return optimal_transmission(Link(cfg), f, mult);
}

double support_edge(const Link& link, const Multipliers& mult) {
    require_lna_noise(link);
    const double a = link.emax * link.friis_coeff / link.n_lna;
    if (!(a > mult.m1)) return std::numeric_limits<double>::infinity();
    return std::sqrt(mult.m2 / (a - mult.m1));
}

double gamma_opt(const Multipliers& mult) {
    mult.validate();
    if (!(mult.m1 > 0) || !(mult.m2 > 0)) throw DomainError("gamma_opt: both multipliers must be positive");
    return 2.0 * kPi * std::sqrt(mult.m2 / mult.m1);
}

chu::FanoIntegrals transmission_integrals(const Link& link, const Multipliers& mult,
                                          const numerics::QuadratureSpec& spec) {
    mult.validate();
    const Scaled sc(link);
    const double fr = sc.fr;
    const double n1 = mult.m1 / (fr * fr);
    const double n2 = mult.m2 / (fr * fr * fr * fr);
    return {sc.integral<2>(n1, n2, spec) / fr, sc.integral<4>(n1, n2, spec) / (fr * fr * fr)};
}

double size_of_multipliers(const Link& link, const Multipliers& mult, const numerics::QuadratureSpec& spec) {
    if (!(mult.m1 > 0) || !(mult.m2 > 0))
        throw DomainError("size_of_multipliers: both multipliers must be positive");
    const auto ints = transmission_integrals(link, mult, spec);
    return link.c / (4.0 * kPi2) * ints.weighted_f2 + link.c / (2.0 * kPi) * std::sqrt(mult.m1 / mult.m2);
}

double size_of_multipliers(const SystemConfig& cfg, const Multipliers& mult) {
    return size_of_multipliers(Link(cfg), mult);
}

double constraint_residual(const Link& link, const Multipliers& mult, const numerics::QuadratureSpec& spec) {
    const double a = size_of_multipliers(link, mult, spec);
    const double i4 = transmission_integrals(link, mult, spec).weighted_f4;
    const double ac = a / link.c;
    const double lhs = i4 / (8.0 * kPi4);
    const double rhs = 4.0 * ac * ac * ac / 3.0 + std::pow(mult.m1 / mult.m2, 1.5) / (12.0 * kPi2 * kPi);
    return (lhs - rhs) / rhs;
}

double constraint_residual(const SystemConfig& cfg, const Multipliers& mult) {
    return constraint_residual(Link(cfg), mult);
}

chu::FanoBudget MatchingSolution::budget() const {
    return chu::fano_budget(chu::ChuCircuit{achieved_a, 1.0, link.c}, gamma);
}

MatchingSolution solve_for_size(const Link& link, double target_a, const SolverOptions& opts) {
    if (!(target_a > 0) || !std::isfinite(target_a)) throw DomainError("solve_for_size: target radius must be positive");
    if (!(link.n_lna > 0)) throw ConfigError("solve_for_size: requires noise_factor > 1 (N_LNA > 0)");
    if (!(link.emax > 0)) throw ConfigError("solve_for_size: requires a positive transmit PSD");
    opts.quadrature.validate();
    Solver solver(link, target_a, opts);
    return solver.solve(target_a);
}

MatchingSolution solve_for_size(const SystemConfig& cfg, double target_a, const SolverOptions& opts) {
    return solve_for_size(Link(cfg), target_a, opts);
}

bool KktReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const KktCheck& c) { return c.pass; });
}

KktReport verify_kkt(const MatchingSolution& sol, std::size_t grid_points) {
    const Link& link = sol.link;
    const Multipliers& m = sol.multipliers;
    KktReport rep;
    const char* names[9] = {"stationarity",    "slackness K1", "slackness K2", "mu3 >= 0", "mu4 = 0",
                            "multiplier signs", "mu3 * T = 0", "0 <= T < 1",  "gamma identity"};
    for (int i = 0; i < 9; ++i) {
        rep.checks[i].index = i + 1;
        rep.checks[i].name = names[i];
    }

    std::vector<double> grid = uniform_points(link.band_lo, link.band_hi, grid_points);
    for (double f : uniform_points(0.5 * link.band_lo, link.band_lo, 33)) grid.push_back(f * (1.0 - 1e-9));
    for (double f : uniform_points(link.band_hi, 2.0 * link.band_hi, 33)) grid.push_back(f * (1.0 + 1e-9));

    double stat = 0.0;
    double mu3_min = 0.0;
    double max_t = 0.0;
    double min_t = 0.0;
    bool signs_ok = m.m1 >= 0 && m.m2 >= 0;
    int activity_violations = 0;
    int out_of_band_nonzero = 0;
    const double nl = link.n_lna;
    for (double f : grid) {
        const Transmission tr = transmission(link, f, m);
        const double t = tr.t;
        const double sigma = link.signal(f) / nl;
        const double nu = link.n0 / nl;
        const double w = m.m1 / (f * f) + m.m2 / (f * f * f * f);
        max_t = std::max(max_t, t);
        min_t = std::min(min_t, t);
        if (!link.in_band(f) && t != 0.0) ++out_of_band_nonzero;
        const double c1 = -(nu + sigma) * nu * w;
        const double c2 = -(2.0 * nu + sigma) * w - sigma;
        const double c3 = sigma - w;
        if (w > 0 && (c1 > 0 || c2 > 0)) signs_ok = false;
        if (t > 0) {
            const double scale = std::abs(c1) * t * t + std::abs(c2) * t + std::abs(c3);
            stat = std::max(stat, std::abs((c1 * t + c2) * t + c3) / scale);
            if (!(sigma > w)) ++activity_violations;
        } else {
            const double mu3 = w - sigma;
            mu3_min = std::min(mu3_min, mu3 / std::max(w, std::max(sigma, 1e-300)));
        }
    }

    rep.checks[0].magnitude = stat;
    rep.checks[0].pass = stat <= 1e-9;

    const auto ints = transmission_integrals(link, m);
    const chu::FanoBudget b = sol.budget();
    auto slack = [](KktCheck& chk, double mult, double integral, double budget) {
        const double rel = (integral - budget) / budget;
        chk.magnitude = rel;
        if (mult > 0) {
            chk.pass = std::abs(rel) <= 1e-6;
        } else {
            chk.pass = rel <= 1e-6;
            chk.note = "multiplier zero: feasibility only";
        }
    };
    slack(rep.checks[1], m.m1, ints.weighted_f2, b.k1);
    slack(rep.checks[2], m.m2, ints.weighted_f4, b.k2);

    rep.checks[3].magnitude = mu3_min;
    rep.checks[3].pass = mu3_min >= -1e-12;

    rep.checks[4].magnitude = max_t;
    rep.checks[4].pass = max_t < 1.0;

    rep.checks[5].magnitude = std::min(m.m1, m.m2);
    rep.checks[5].pass = signs_ok;

    rep.checks[6].magnitude = activity_violations;
    rep.checks[6].pass = activity_violations == 0;

    rep.checks[7].magnitude = std::max(max_t, -min_t);
    rep.checks[7].pass = min_t >= 0.0 && max_t < 1.0 && out_of_band_nonzero == 0;
    if (out_of_band_nonzero > 0) rep.checks[7].note = "non-zero T* outside the band";

    if (sol.regime == Regime::unconstrained) {
        rep.checks[8].pass = m.m1 == 0.0 && m.m2 == 0.0;
        rep.checks[8].note = "unconstrained: both budgets slack";
    } else if (sol.regime == Regime::boundary) {
        rep.checks[8].pass = std::isinf(sol.gamma);
        rep.checks[8].magnitude = 0.0;
        rep.checks[8].note = "boundary: 1/gamma = 0";
    } else if (m.m1 > 0 && m.m2 > 0) {
        const double rel = sol.gamma / gamma_opt(m) - 1.0;
        rep.checks[8].magnitude = rel;
        rep.checks[8].pass = std::abs(rel) <= 1e-12;
    } else {
        rep.checks[8].note = "zero multiplier in the interior regime";
    }
    return rep;
}

std::string_view regime_name(Regime regime) {
    switch (regime) {
        case Regime::interior: return "interior";
        case Regime::boundary: return "boundary";
        case Regime::unconstrained: return "unconstrained";
    }
    return "unknown";
}

nlohmann::json solution_to_json(const MatchingSolution& sol) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& [f, t] : sol.t_star_samples) samples.push_back({f, t});
    return {{"m1", sol.multipliers.m1},
            {"m2", sol.multipliers.m2},
            {"gamma", std::isinf(sol.gamma) ? nlohmann::json(nullptr) : nlohmann::json(sol.gamma)},
            {"achieved_a", sol.achieved_a},
            {"target_a", sol.target_a},
            {"regime", regime_name(sol.regime)},
            {"band", {sol.link.band_lo, sol.link.band_hi}},
            {"t_star_samples", samples}};
}

}  // namespace churate::matching
