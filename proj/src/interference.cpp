#include "churate/interference.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <numbers>
#include <random>

#include "churate/errors.hpp"

namespace churate::interference {

namespace {

constexpr double kPi = std::numbers::pi;

// Mean and variance of the field restricted to r > r (Campbell's theorem with unit-mean,
// unit-variance exponential marks).
Moments tail_moments(const InterferenceField& f, double r) {
    const double a = f.alpha;
    const double mean = 2.0 * kPi * f.density / (a - 2.0) * f.pt * std::pow(f.lambda, a) * std::pow(r, 2.0 - a);
    const double var = 2.0 * f.pt * f.pt * kPi * f.density / (a - 1.0) * std::pow(f.lambda, 2.0 * a) *
                       std::pow(r, 2.0 * (1.0 - a));
    return {mean, var};
}

struct Node {
    double value;
    double weight;
};

std::vector<Node> gamma_nodes(const GammaModel& gm, int n) {
    gm.validate();
    if (gm.theta == 0.0) return {{0.0, 1.0}};
    const auto rule = numerics::gamma_expectation_rule(gm.k, n);
    std::vector<Node> nodes;
    nodes.reserve(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) nodes.push_back({rule.nodes[i] * gm.theta, rule.weights[i]});
    return nodes;
}

// Running first four central moments (Terriberry's update).
class MomentAccumulator {
public:
    void add(double x) {
        const double n1 = n_;
        n_ += 1.0;
        const double delta = x - mean_;
        const double dn = delta / n_;
        const double dn2 = dn * dn;
        const double term = delta * dn * n1;
        mean_ += dn;
        m4_ += term * dn2 * (n_ * n_ - 3.0 * n_ + 3.0) + 6.0 * dn2 * m2_ - 4.0 * dn * m3_;
        m3_ += term * dn * (n_ - 2.0) - 3.0 * dn * m2_;
        m2_ += term;
    }

    SampleStats stats() const {
        SampleStats s;
        s.mean = mean_;
        s.variance = n_ > 1 ? m2_ / (n_ - 1.0) : 0.0;
        s.mean_se = std::sqrt(s.variance / n_);
        const double mu2 = m2_ / n_;
        s.variance_se = std::sqrt(std::max(0.0, m4_ / n_ - mu2 * mu2) / n_);
        return s;
    }

private:
    double n_ = 0.0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double m3_ = 0.0;
    double m4_ = 0.0;
};

}  // namespace

void InterferenceField::validate() const {
    if (!(density >= 0) || !std::isfinite(density)) throw DomainError("interference field: density must be >= 0");
    if (!(alpha > 2)) throw DomainError("interference field: alpha must exceed 2 for a finite mean");
    if (!(r0 > 0)) throw DomainError("interference field: r0 must be positive");
    if (!(pt >= 0)) throw DomainError("interference field: pt must be non-negative");
    if (!(lambda > 0)) throw DomainError("interference field: lambda must be positive");
}

Moments interference_moments(const InterferenceField& field) {
    field.validate();
    return tail_moments(field, field.r0);
}

Moments annulus_moments(const InterferenceField& field, double r_max) {
    field.validate();
    if (!(r_max > field.r0)) throw DomainError("annulus_moments: r_max must exceed r0");
    const Moments inner = tail_moments(field, field.r0);
    const Moments outer = tail_moments(field, r_max);
    return {inner.mean - outer.mean, inner.variance - outer.variance};
}

void GammaModel::validate() const {
    if (!(k > 0) || !std::isfinite(k)) throw DomainError("gamma model: shape must be positive");
    if (!(theta >= 0) || !std::isfinite(theta)) throw DomainError("gamma model: scale must be non-negative");
}

GammaModel gamma_match(const InterferenceField& field) {
    field.validate();
    if (field.density == 0.0 || field.pt == 0.0) return {1.0, 0.0};
    const double a = field.alpha;
    const double k = 2.0 * kPi * field.density * field.r0 * field.r0 * (a - 1.0) / ((a - 2.0) * (a - 2.0));
    const double theta = (a - 2.0) / (a - 1.0) * field.pt * std::pow(field.lambda / field.r0, a);
    return {k, theta};
}

PppEstimate ppp_oracle(const InterferenceField& field, std::size_t n, std::uint64_t seed, const PppOptions& opts) {
    field.validate();
    if (n < 1) throw DomainError("ppp_oracle: need at least one realisation");
    if (!(opts.r_max_factor > 1)) throw DomainError("ppp_oracle: r_max_factor must exceed 1");
    const double r_max = opts.r_max_factor * field.r0;
    const double r0sq = field.r0 * field.r0;
    const double span = r_max * r_max - r0sq;
    const double expected_count = field.density * kPi * span;
    const double half_alpha = 0.5 * field.alpha;
    const double scale = field.pt * std::pow(field.lambda, field.alpha);

    const Moments tail = tail_moments(field, r_max);
    const bool has_tail = tail.mean > 0.0;
    const double tail_k = has_tail ? tail.mean * tail.mean / tail.variance : 1.0;
    const double tail_theta = has_tail ? tail.variance / tail.mean : 1.0;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::exponential_distribution<double> mark(1.0);
    std::poisson_distribution<long long> count(expected_count > 0 ? expected_count : 1.0);
    std::gamma_distribution<double> tail_draw(tail_k, tail_theta);

    MomentAccumulator annulus;
    MomentAccumulator compensated;
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        const long long pts = expected_count > 0 ? count(rng) : 0;
        for (long long j = 0; j < pts; ++j) {
            const double rsq = r0sq + unif(rng) * span;
            sum += mark(rng) * std::exp(-half_alpha * std::log(rsq));
        }
        sum *= scale;
        annulus.add(sum);
        compensated.add(has_tail ? sum + tail_draw(rng) : sum);
    }
    PppEstimate est;
    est.realizations = n;
    est.annulus = annulus.stats();
    est.compensated = compensated.stats();
    est.truncated_mean_fraction = std::pow(field.r0 / r_max, field.alpha - 2.0);
    return est;
}

ClosedFormResult rate_fixed_antenna_closed_form(const Link& link, const rate::TransmissionFn& t_of_f,
                                                const GammaModel& gm, const rate::RateOptions& opts) {
    gm.validate();
    const double mean = gm.mean();
    const double var = gm.variance();
    auto integrand = [&](double f) {
        const double t = t_of_f(f);
        if (t == 0.0) return 0.0;
        const double s = link.signal(f);
        const double num = (mean + link.n0 + s) * t + link.n_lna;
        const double den = (mean + link.n0) * t + link.n_lna;
        const double log_term = std::log(num / den);
        const double correction = 0.5 * t * t * var * (1.0 / (num * num) - 1.0 / (den * den));
        return (log_term - correction) / std::numbers::ln2;
    };
    ClosedFormResult res;
    res.rate_bps = numerics::integrate_band(integrand, link.band_lo, link.band_hi, opts.quadrature, opts.breakpoints);
    res.validity_warning = var > 0.01 * mean * mean;
    return res;
}

double rate_fixed_antenna_numeric(const Link& link, const rate::TransmissionFn& t_of_f, const GammaModel& gm,
                                  const ExpectationOptions& opts) {
    double total = 0.0;
    for (const Node& node : gamma_nodes(gm, opts.nodes))
        total += node.weight * rate::rate_integral(link.with_extra_noise(node.value), t_of_f, opts.rate);
    return total;
}

double shannon_rate(const Link& link, const GammaModel& gm, const ExpectationOptions& opts) {
    double total = 0.0;
    for (const Node& node : gamma_nodes(gm, opts.nodes))
        total += node.weight * rate::shannon_rate(link.with_extra_noise(node.value), opts.rate);
    return total;
}

AdaptiveResult rate_adaptive_antenna(const Link& link, double radius_m, const GammaModel& gm,
                                     const AdaptiveOptions& opts) {
    const auto nodes = gamma_nodes(gm, opts.nodes);
    AdaptiveResult res;
    res.nodes = static_cast<int>(nodes.size());
    double rate_sum = 0.0;
    double shannon_sum = 0.0;
    double kept = 0.0;
    for (const Node& node : nodes) {
        const Link noisy = link.with_extra_noise(node.value);
        try {
            const auto sol = matching::solve_for_size(noisy, radius_m, opts.solver);
            const double r =
                rate::rate_integral(noisy, rate::optimal_profile(sol), rate::options_for(sol, opts.rate));
            rate_sum += node.weight * r;
            shannon_sum += node.weight * rate::shannon_rate(noisy, opts.rate);
            kept += node.weight;
            res.node_rates.push_back(r);
        } catch (const InfeasibleError&) {
            ++res.failed_nodes;
            res.node_rates.push_back(std::nan(""));
        } catch (const IterationLimitError&) {
            ++res.failed_nodes;
            res.node_rates.push_back(std::nan(""));
        } catch (const ConvergenceError&) {
            ++res.failed_nodes;
            res.node_rates.push_back(std::nan(""));
        }
    }
    if (res.failed_nodes * 10 > res.nodes)
        throw Error("rate_adaptive_antenna: " + std::to_string(res.failed_nodes) + " of " +
                    std::to_string(res.nodes) + " interference nodes failed");
    res.excluded_weight = 1.0 - kept;
    res.rate_bps = rate_sum / kept;
    res.shannon_bps = shannon_sum / kept;
    return res;
}

}  // namespace churate::interference
