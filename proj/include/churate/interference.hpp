#pragma once

#include <cstdint>
#include <vector>

#include "churate/channel.hpp"
#include "churate/matching.hpp"
#include "churate/numerics.hpp"
#include "churate/rate.hpp"

namespace churate::interference {

/// Poisson field of Rayleigh-faded interferers outside a disc of radius r0 around the
/// receiver, with pathloss (r/lambda)^alpha. `pt` is the interferer transmit power per unit
/// bandwidth (W/Hz), so the aggregate interference is a flat density added to N0.
struct InterferenceField {
    double density = 0.0;  // users per m^2
    double alpha = 2.5;
    double r0 = 1000.0;    // m
    double pt = 0.0;       // W/Hz
    double lambda = 0.5;   // m

    void validate() const;
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Mean and variance of the aggregate interference over r > r0. Throws DomainError for
/// alpha <= 2.
Moments interference_moments(const InterferenceField& field);

/// Same moments restricted to the annulus r0 < r < r_max.
Moments annulus_moments(const InterferenceField& field, double r_max);

struct GammaModel {
    double k = 1.0;
    double theta = 0.0;

    double mean() const { return k * theta; }
    double variance() const { return k * theta * theta; }
    void validate() const;
};

/// k = E[I]^2 / Var[I], theta = Var[I] / E[I]; evaluated from the closed forms
/// k = 2 pi rho r0^2 (alpha-1)/(alpha-2)^2 and theta = (alpha-2)/(alpha-1) pt (lambda/r0)^alpha.
GammaModel gamma_match(const InterferenceField& field);

struct PppOptions {
    double r_max_factor = 100.0;
};

struct SampleStats {
    double mean = 0.0;
    double variance = 0.0;
    double mean_se = 0.0;
    double variance_se = 0.0;  // from the fourth central moment
};

struct PppEstimate {
    /// Field simulated on the annulus [r0, r_max]; compare with annulus_moments().
    SampleStats annulus;
    /// Annulus sum plus an independent Gamma variate carrying the exact mean and variance of
    /// the field beyond r_max; compare with interference_moments().
    SampleStats compensated;
    /// Fraction of the full-plane mean lying beyond r_max: (r0/r_max)^(alpha-2).
    double truncated_mean_fraction = 0.0;
    std::size_t realizations = 0;
};

/// Monte Carlo over n realisations of the marked Poisson field. Deterministic for a given
/// seed.
PppEstimate ppp_oracle(const InterferenceField& field, std::size_t n, std::uint64_t seed,
                       const PppOptions& opts = {});

struct ExpectationOptions {
    int nodes = 64;
    rate::RateOptions rate;
};

struct ClosedFormResult {
    double rate_bps = 0.0;
    /// Set when Var[I] > 0.01 E[I]^2, outside the validity range of the expansion.
    bool validity_warning = false;
};

/// Second-order expansion of E[log2(((I+N0+S)T + N_LNA) / ((I+N0)T + N_LNA))] about I = E[I],
/// integrated over the band.
ClosedFormResult rate_fixed_antenna_closed_form(const Link& link, const rate::TransmissionFn& t_of_f,
                                                const GammaModel& gm, const rate::RateOptions& opts = {});

/// Expectation of the band rate over the Gamma law by generalised Gauss-Laguerre quadrature.
double rate_fixed_antenna_numeric(const Link& link, const rate::TransmissionFn& t_of_f, const GammaModel& gm,
                                  const ExpectationOptions& opts = {});

/// Expected baseline rate with t = 1 under the same interference law.
double shannon_rate(const Link& link, const GammaModel& gm, const ExpectationOptions& opts = {});

struct AdaptiveResult {
    double rate_bps = 0.0;
    double shannon_bps = 0.0;  // with the same nodes
    int nodes = 0;
    int failed_nodes = 0;
    double excluded_weight = 0.0;
    std::vector<double> node_rates;  // NaN for excluded nodes
};

struct AdaptiveOptions {
    int nodes = 16;
    rate::RateOptions rate;
    matching::SolverOptions solver;
};

/// Re-optimises the matching network at every quadrature node of the interference law and
/// averages the resulting rates. Nodes whose solve fails are dropped and the remaining
/// weights renormalised; throws Error when more than 10% of the nodes fail.
AdaptiveResult rate_adaptive_antenna(const Link& link, double radius_m, const GammaModel& gm,
                                     const AdaptiveOptions& opts = {});

}  // namespace churate::interference
