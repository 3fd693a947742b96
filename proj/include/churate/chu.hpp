#pragma once

#include <complex>
#include <limits>

#include "churate/numerics.hpp"

namespace churate::chu {

/// Sentinel for "no finite positive reflection zero" (1/gamma = 0).
inline constexpr double kNoReflectionZero = std::numeric_limits<double>::infinity();

/// TM1 equivalent circuit of an antenna enclosed in a sphere of radius `a`: series
/// capacitance a/(c R2) feeding an inductance a R2/c in parallel with R2.
struct ChuCircuit {
    double a;
    double r2 = 1.0;
    double c = 3.0e8;

    double tau() const { return a / c; }
    double capacitance() const { return a / (c * r2); }
    double inductance() const { return a * r2 / c; }
    /// Electrical size x = 2*pi*f*a/c.
    double electrical_size(double f) const { return 2.0 * std::numbers::pi * f * tau(); }
    void validate() const;
};

/// Right-hand sides of the two realisability constraints for a given reflection zero.
struct FanoBudget {
    double k1;     // s
    double k2;     // s^3
    double gamma;  // 1/s, kNoReflectionZero allowed
};

std::complex<double> input_impedance(const ChuCircuit& circ, double f);

/// Darlington transmission coefficient of the bare (unmatched) circuit at s = j*2*pi*f.
std::complex<double> unmatched_transmission(const ChuCircuit& circ, double f);
std::complex<double> unmatched_reflection(const ChuCircuit& circ, double f);

/// |T~|^2 = 4x^4/(1+4x^4) and |Gamma~|^2 = 1/(1+4x^4), evaluated without cancellation.
double unmatched_power_transmission(const ChuCircuit& circ, double f);
double unmatched_power_reflection(const ChuCircuit& circ, double f);

/// K1 = 2 pi^2 (2a/c - 2/gamma), K2 = 8 pi^4 (4a^3/(3c^3) + 2/(3 gamma^3)).
FanoBudget fano_budget(const ChuCircuit& circ, double gamma);

struct FanoIntegrals {
    double weighted_f2;  // int f^-2 ln(1/|Gamma|^2) df
    double weighted_f4;  // int f^-4 ln(1/|Gamma|^2) df
};

/// Both realisability integrals of the bare circuit over [0, inf), evaluated in the
/// dimensionless variable x = 2*pi*f*a/c.
FanoIntegrals bare_fano_integrals(const ChuCircuit& circ,
                                  const numerics::QuadratureSpec& spec = {1e-10, 1e-14, 400});

}  // namespace churate::chu
