#include <doctest.h>

#include <cmath>
#include <complex>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "churate/chu.hpp"
#include "churate/errors.hpp"
#include "churate/model.hpp"

using namespace churate;
using namespace churate::chu;

namespace {

constexpr double c0 = 3.0e8;

double freq_at_x(const ChuCircuit& circ, double x) { return x / (2 * kPi * circ.tau()); }

}  // namespace

TEST_CASE("circuit elements") {
    const ChuCircuit circ{0.05, 2.0};
    CHECK(circ.capacitance() == doctest::Approx(0.05 / (c0 * 2.0)));
    CHECK(circ.inductance() == doctest::Approx(0.05 * 2.0 / c0));
    CHECK_THROWS_AS(ChuCircuit{0.0}.validate(), DomainError);
    CHECK_THROWS_AS((ChuCircuit{0.01, -1.0}).validate(), DomainError);
}

TEST_CASE("input impedance at unit electrical size") {
    for (double r2 : {1.0, 50.0}) {
        const ChuCircuit circ{0.01, r2};
        const auto z = input_impedance(circ, freq_at_x(circ, 1.0));
        CHECK(z.real() == doctest::Approx(0.5 * r2).epsilon(1e-13));
        CHECK(z.imag() == doctest::Approx(-0.5 * r2).epsilon(1e-13));
    }
}

TEST_CASE("input impedance has positive real part") {
    const ChuCircuit circ{0.02};
    for (double f = 1e3; f < 1e12; f *= 1.3) CHECK(input_impedance(circ, f).real() > 0);
}

TEST_CASE("unmatched transmission") {
    const ChuCircuit circ{0.01};
    const double x_half = std::pow(0.25, 0.25);
    const double f = freq_at_x(circ, x_half);
    CHECK(unmatched_power_transmission(circ, f) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(unmatched_power_reflection(circ, f) == doctest::Approx(0.5).epsilon(1e-14));

    // complex coefficients against the closed-form magnitude
    for (double x : {1e-3, 0.1, 0.7, 1.0, 3.0, 40.0}) {
        const double fx = freq_at_x(circ, x);
        const double t2 = std::norm(unmatched_transmission(circ, fx));
        const double g2 = std::norm(unmatched_reflection(circ, fx));
        const double x4 = 4 * std::pow(x, 4);
        CHECK(t2 == doctest::Approx(x4 / (1 + x4)).epsilon(1e-12));
        CHECK(g2 == doctest::Approx(1 / (1 + x4)).epsilon(1e-12));
    }
}

TEST_CASE("losslessness on a log grid") {
    for (double a : {1e-4, 1e-3, 1e-2, 0.1, 1.0}) {
        const ChuCircuit circ{a};
        for (int i = 0; i < 400; ++i) {
            const double f = 1e3 * std::pow(10.0, 9.0 * i / 399.0);
            const double s = unmatched_power_transmission(circ, f) + unmatched_power_reflection(circ, f);
            CHECK(std::abs(s - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("fano budget") {
    const ChuCircuit circ{0.05};
    const auto b = fano_budget(circ, kNoReflectionZero);
    CHECK(b.k1 == doctest::Approx(6.5797e-9).epsilon(1e-4));
    CHECK(b.k1 == doctest::Approx(4 * kPi * kPi * 0.05 / c0).epsilon(1e-14));
    CHECK(b.k2 == doctest::Approx(32 * std::pow(kPi, 4) * std::pow(0.05 / c0, 3) / 3).epsilon(1e-14));

    const auto zero = fano_budget(circ, c0 / 0.05);
    CHECK(std::abs(zero.k1) < 1e-14 * b.k1);
    CHECK(zero.k2 > b.k2);

    CHECK_THROWS_AS(fano_budget(circ, 0.0), DomainError);
    CHECK_THROWS_AS(fano_budget(circ, -1.0), DomainError);
}

TEST_CASE("reference integrals by an independent quadrature") {
    // Both closed forms used by the bare-circuit budgets, checked before relying on them.
    boost::math::quadrature::exp_sinh<double> es;
    boost::math::quadrature::tanh_sinh<double> ts;
    // ln(1+u^4) written to stay finite for large u
    auto l = [](double u) { return u < 1 ? std::log1p(std::pow(u, 4)) : 4 * std::log(u) + std::log1p(std::pow(u, -4)); };
    auto g2 = [&](double u) { return u < 1e-4 ? u * u : l(u) / (u * u); };
    auto g4 = [&](double u) { return u < 1e-4 ? 1.0 : l(u) / std::pow(u, 4); };
    const double i2 = ts.integrate(g2, 0.0, 1.0) + es.integrate(g2, 1.0, std::numeric_limits<double>::infinity());
    const double i4 = ts.integrate(g4, 0.0, 1.0) + es.integrate(g4, 1.0, std::numeric_limits<double>::infinity());
    CHECK(i2 == doctest::Approx(std::sqrt(2.0) * kPi).epsilon(1e-12));
    CHECK(i4 == doctest::Approx(std::sqrt(2.0) * kPi / 3).epsilon(1e-12));
}

TEST_CASE("bare circuit saturates both budgets") {
    for (double a : {0.0005, 0.005, 0.05, 0.5}) {
        const ChuCircuit circ{a};
        const auto ints = bare_fano_integrals(circ);
        const auto b = fano_budget(circ, kNoReflectionZero);
        CHECK(ints.weighted_f2 == doctest::Approx(b.k1).epsilon(1e-9));
        CHECK(ints.weighted_f4 == doctest::Approx(b.k2).epsilon(1e-9));
    }
}
