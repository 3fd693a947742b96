#include "churate/chu.hpp"

#include <cmath>
#include <numbers>

#include "churate/errors.hpp"

namespace churate::chu {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

void ChuCircuit::validate() const {
    if (!(a > 0) || !std::isfinite(a)) throw DomainError("ChuCircuit: radius must be positive");
    if (!(r2 > 0)) throw DomainError("ChuCircuit: r2 must be positive");
    if (!(c > 0)) throw DomainError("ChuCircuit: c must be positive");
}

std::complex<double> input_impedance(const ChuCircuit& circ, double f) {
    circ.validate();
    if (f == 0.0) throw DomainError("input_impedance: pole at f = 0");
    if (!(f > 0)) throw DomainError("input_impedance: frequency must be positive");
    const std::complex<double> st(0.0, 2.0 * kPi * f * circ.tau());
    return circ.r2 / st + circ.r2 / (1.0 / st + 1.0);
}

std::complex<double> unmatched_transmission(const ChuCircuit& circ, double f) {
    circ.validate();
    if (f < 0) throw DomainError("unmatched_transmission: frequency must be non-negative");
    const std::complex<double> st(0.0, 2.0 * kPi * f * circ.tau());
    const std::complex<double> num = 2.0 * st * st;
    return num / (num + 2.0 * st + 1.0);
}

std::complex<double> unmatched_reflection(const ChuCircuit& circ, double f) {
    circ.validate();
    if (f < 0) throw DomainError("unmatched_reflection: frequency must be non-negative");
    const std::complex<double> st(0.0, 2.0 * kPi * f * circ.tau());
    return 1.0 / (2.0 * st * st + 2.0 * st + 1.0);
}

double unmatched_power_transmission(const ChuCircuit& circ, double f) {
    const double x = circ.electrical_size(f);
    const double x4 = 4.0 * x * x * x * x;
    return x4 / (1.0 + x4);
}

double unmatched_power_reflection(const ChuCircuit& circ, double f) {
    const double x = circ.electrical_size(f);
    return 1.0 / (1.0 + 4.0 * x * x * x * x);
}

FanoBudget fano_budget(const ChuCircuit& circ, double gamma) {
    circ.validate();
    if (!(gamma > 0)) throw DomainError("fano_budget: gamma must be positive");
    const double inv = std::isinf(gamma) ? 0.0 : 1.0 / gamma;
    const double tau = circ.tau();
    const double k1 = 2.0 * kPi * kPi * (2.0 * tau - 2.0 * inv);
    const double k2 = 8.0 * kPi * kPi * kPi * kPi *
                      (4.0 * tau * tau * tau / 3.0 + 2.0 * inv * inv * inv / 3.0);
    return {k1, k2, gamma};
}

FanoIntegrals bare_fano_integrals(const ChuCircuit& circ, const numerics::QuadratureSpec& spec) {
    circ.validate();
    // f = x / (2 pi tau): df = dx / (2 pi tau), f^-n = (2 pi tau)^n x^-n.
    const double k = 2.0 * kPi * circ.tau();
    auto g2 = [](double x) {
        if (x == 0.0) return 0.0;
        const double u4 = 4.0 * x * x * x * x;
        return std::log1p(u4) / (x * x);
    };
    auto g4 = [](double x) {
        if (x == 0.0) return 4.0;
        const double u4 = 4.0 * x * x * x * x;
        return std::log1p(u4) / (x * x * x * x);
    };
    const double j2 = numerics::integrate_semi_infinite(g2, spec);
    const double j4 = numerics::integrate_semi_infinite(g4, spec);
    return {j2 * k, j4 * k * k * k};
}

}  // namespace churate::chu
