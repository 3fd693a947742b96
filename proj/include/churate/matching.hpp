#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "churate/channel.hpp"
#include "churate/chu.hpp"
#include "churate/numerics.hpp"

namespace churate::matching {

/// Magnitudes of the two Fano multipliers. The signed multipliers are -m1 and -m2.
struct Multipliers {
    double m1 = 0.0;  // Hz^2
    double m2 = 0.0;  // Hz^4

    void validate() const;
};

struct QuadraticCoeffs {
    double c1;
    double c2;
    double c3;
};

/// T* together with 1 - T*, the latter computed without cancellation when T* is close to 1.
struct Transmission {
    double t;
    double one_minus_t;

    /// ln(1/(1 - T*)).
    double log_gain() const;
};

/// Coefficients of C1 T^2 + C2 T + C3 = 0 with the signed multipliers substituted.
QuadraticCoeffs quadratic_coeffs(const Link& link, double f, const Multipliers& mult);
QuadraticCoeffs quadratic_coeffs(const SystemConfig& cfg, double f, const Multipliers& mult);

/// Smaller root of the quadratic, clamped at 0 and capped at 1 - kTransmissionCap.
/// Requires N_LNA > 0.
Transmission transmission(const Link& link, double f, const Multipliers& mult);
double optimal_transmission(const Link& link, double f, const Multipliers& mult);
double optimal_transmission(const SystemConfig& cfg, double f, const Multipliers& mult);

inline constexpr double kTransmissionCap = 1e-12;

/// Lower edge of the set where T* > 0. With a flat PSD and a free-space channel the received
/// SNR scales as f^-2, so T* > 0 exactly for f > sqrt(m2 / (A - m1)) where A = S f^2 / N_LNA.
/// Returns +inf when T* vanishes for all f.
double support_edge(const Link& link, const Multipliers& mult);

/// gamma = 2 pi sqrt(m2/m1). Throws DomainError when either multiplier is zero.
double gamma_opt(const Multipliers& mult);

/// In-band integrals of f^-2 ln(1/(1-T*)) and f^-4 ln(1/(1-T*)).
chu::FanoIntegrals transmission_integrals(const Link& link, const Multipliers& mult,
                                          const numerics::QuadratureSpec& spec = {1e-11, 1e-14, 400});

/// a = c/(4 pi^2) * int f^-2 ln(1/(1-T*)) df + c/(2 pi) * sqrt(m1/m2).
double size_of_multipliers(const Link& link, const Multipliers& mult,
                           const numerics::QuadratureSpec& spec = {1e-11, 1e-14, 400});
double size_of_multipliers(const SystemConfig& cfg, const Multipliers& mult);

/// Relative residual (LHS - RHS)/RHS of the implicit multiplier relation
/// int f^-4 ln(1/(1-T*)) / (8 pi^4) = 4 a^3 / (3 c^3) + (m1/m2)^{3/2} / (12 pi^3),
/// with a taken from size_of_multipliers. (m1/m2)^{3/2}/(12 pi^3) equals (2/3) gamma^-3 for
/// gamma = 2 pi sqrt(m2/m1).
double constraint_residual(const Link& link, const Multipliers& mult,
                           const numerics::QuadratureSpec& spec = {1e-11, 1e-14, 400});
double constraint_residual(const SystemConfig& cfg, const Multipliers& mult);

/// interior: both multipliers positive, gamma finite.
/// boundary: the radius is large enough that the K1 share alone cannot absorb the f^-2
/// integral; the optimum sits at 1/gamma = 0.
/// unconstrained: the capped profile T = 1 - kTransmissionCap fits both budgets; both
/// multipliers are zero.
enum class Regime { interior, boundary, unconstrained };
std::string_view regime_name(Regime regime);

struct MatchingSolution {
    Multipliers multipliers;
    double gamma = chu::kNoReflectionZero;
    double target_a = 0.0;
    double achieved_a = 0.0;
    Regime regime = Regime::interior;
    Link link;
    double edge_hz = 0.0;  // lower edge of the T* support
    std::vector<std::pair<double, double>> t_star_samples;
    struct Residuals {
        double size_eq = 0.0;        // (achieved_a - target_a) / target_a
        double constraint_eq = 0.0;  // constraint_residual at the solution
    } residuals;
    int evaluations = 0;  // number of integral evaluations spent by the solver

    double t_star(double f) const { return transmission(link, f, multipliers).t; }
    chu::FanoBudget budget() const;
};

struct SolverOptions {
    numerics::QuadratureSpec quadrature{1e-11, 1e-14, 400};
    int points_per_decade = 8;
    double scan_decades = 60.0;
    std::size_t samples = 512;
};

/// Finds the multipliers whose optimal transmission exhausts both Fano budgets of a sphere
/// of radius target_a. Throws InfeasibleError when no bracket is found and ConfigError when
/// N_LNA = 0.
MatchingSolution solve_for_size(const Link& link, double target_a, const SolverOptions& opts = {});
MatchingSolution solve_for_size(const SystemConfig& cfg, double target_a, const SolverOptions& opts = {});

struct KktCheck {
    int index = 0;
    std::string name;
    bool pass = false;
    double magnitude = 0.0;
    std::string note;
};

struct KktReport {
    std::array<KktCheck, 9> checks;
    bool all_pass() const;
};

/// Numerical check of the nine optimality conditions on a dense grid.
KktReport verify_kkt(const MatchingSolution& sol, std::size_t grid_points = 2048);

nlohmann::json solution_to_json(const MatchingSolution& sol);

}  // namespace churate::matching
