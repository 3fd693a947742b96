#include "churate/rate.hpp"

#include <cmath>
#include <numbers>

#include "churate/chu.hpp"
#include "churate/errors.hpp"

namespace churate::rate {

namespace {

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

std::vector<double> trace_grid(const Link& link, std::size_t n) {
    std::vector<double> pts;
    if (n == 0) return pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double frac = n == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1);
        pts.push_back(link.band_lo + frac * (link.band_hi - link.band_lo));
    }
    return pts;
}

}  // namespace

double snr_at(const Link& link, double f, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("snr_at: transmission must lie in [0, 1]");
    if (t == 0.0) return 0.0;
    const double s = link.signal(f);
    if (s == 0.0) return 0.0;
    return s * t / (link.n0 * t + link.n_lna);
}

double snr_at(const SystemConfig& cfg, double f, double t) { return snr_at(Link(cfg), f, t); }

double rate_integral(const Link& link, const TransmissionFn& t_of_f, const RateOptions& opts) {
    auto integrand = [&](double f) { return log2_1p(snr_at(link, f, t_of_f(f))); };
    return numerics::integrate_band(integrand, link.band_lo, link.band_hi, opts.quadrature, opts.breakpoints);
}

double shannon_rate(const Link& link, const RateOptions& opts) {
    RateOptions plain = opts;
    plain.breakpoints.clear();
    return rate_integral(link, [](double) { return 1.0; }, plain);
}

RateReport achievable_rate(const Link& link, const TransmissionFn& t_of_f, const RateOptions& opts) {
    RateReport rep;
    rep.rate_bps = rate_integral(link, t_of_f, opts);
    rep.shannon_bps = shannon_rate(link, opts);
    rep.fraction = rep.shannon_bps > 0 ? rep.rate_bps / rep.shannon_bps : 0.0;
    for (double f : trace_grid(link, opts.trace_points)) rep.snr_trace.emplace_back(f, snr_at(link, f, t_of_f(f)));
    return rep;
}

RateReport achievable_rate(const SystemConfig& cfg, const TransmissionFn& t_of_f, const RateOptions& opts) {
    return achievable_rate(Link(cfg), t_of_f, opts);
}

TransmissionFn unmatched_profile(double radius_m, double c) {
    const chu::ChuCircuit circ{radius_m, 1.0, c};
    circ.validate();
    return [circ](double f) { return chu::unmatched_power_transmission(circ, f); };
}

TransmissionFn optimal_profile(const matching::MatchingSolution& sol) {
    return [link = sol.link, m = sol.multipliers](double f) { return matching::transmission(link, f, m).t; };
}

RateOptions options_for(const matching::MatchingSolution& sol, RateOptions base) {
    if (std::isfinite(sol.edge_hz) && sol.edge_hz > sol.link.band_lo && sol.edge_hz < sol.link.band_hi)
        base.breakpoints.push_back(sol.edge_hz);
    return base;
}

std::string_view mode_name(MatchingMode mode) {
    switch (mode) {
        case MatchingMode::optimal: return "optimal";
        case MatchingMode::none: return "none";
        case MatchingMode::shannon: return "shannon";
    }
    return "unknown";
}

MatchingMode parse_mode(std::string_view name) {
    if (name == "optimal") return MatchingMode::optimal;
    if (name == "none") return MatchingMode::none;
    if (name == "shannon") return MatchingMode::shannon;
    throw ConfigError("unknown matching mode: " + std::string(name));
}

std::string_view status_name(RowStatus status) {
    switch (status) {
        case RowStatus::ok: return "ok";
        case RowStatus::infeasible: return "infeasible";
        case RowStatus::excluded: return "excluded";
    }
    return "unknown";
}

std::vector<FractionRow> capacity_fraction_sweep(const SystemConfig& base, const std::vector<double>& ratios,
                                                 MatchingMode mode, const SweepOptions& opts) {
    std::vector<FractionRow> rows;
    const Link link(base);
    const double shannon = shannon_rate(link, opts.rate);
    for (double ratio : ratios) {
        if (!(ratio > 0)) throw DomainError("capacity_fraction_sweep: ratios must be positive");
        FractionRow row;
        row.lambda_over_a = ratio;
        row.mode = mode;
        row.shannon_bps = shannon;
        const double a = base.wavelength() / ratio;
        try {
            switch (mode) {
                case MatchingMode::optimal: {
                    const auto sol = matching::solve_for_size(link, a, opts.solver);
                    row.rate_bps = rate_integral(link, optimal_profile(sol), options_for(sol, opts.rate));
                    break;
                }
                case MatchingMode::none:
                    row.rate_bps = rate_integral(link, unmatched_profile(a, link.c), opts.rate);
                    break;
                case MatchingMode::shannon:
                    row.rate_bps = shannon;
                    break;
            }
            row.fraction = row.rate_bps / shannon;
        } catch (const InfeasibleError& e) {
            row.status = RowStatus::infeasible;
            row.message = e.what();
            row.fraction = std::nan("");
        } catch (const IterationLimitError& e) {
            row.status = RowStatus::infeasible;
            row.message = e.what();
            row.fraction = std::nan("");
        } catch (const ConvergenceError& e) {
            row.status = RowStatus::infeasible;
            row.message = e.what();
            row.fraction = std::nan("");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace churate::rate
