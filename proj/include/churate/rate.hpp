#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "churate/channel.hpp"
#include "churate/matching.hpp"
#include "churate/numerics.hpp"

namespace churate::rate {

using TransmissionFn = std::function<double(double)>;

struct RateReport {
    double rate_bps = 0.0;
    double shannon_bps = 0.0;
    double fraction = 0.0;
    std::vector<std::pair<double, double>> snr_trace;  // (f, snr)
};

struct RateOptions {
    numerics::QuadratureSpec quadrature{1e-10, 1e-14, 400};
    std::size_t trace_points = 512;
    /// Points where t(f) has a kink (for T*, the lower edge of its support).
    std::vector<double> breakpoints;
};

/// S(f) t / (N0 t + N_LNA) with S = P_t(f) |H(f)|^2; zero when t = 0 or P_t(f) = 0.
double snr_at(const Link& link, double f, double t);
double snr_at(const SystemConfig& cfg, double f, double t);

/// Integral of log2(1 + snr) over the band for a given transmission profile.
double rate_integral(const Link& link, const TransmissionFn& t_of_f, const RateOptions& opts = {});

/// Baseline with t = 1 everywhere.
double shannon_rate(const Link& link, const RateOptions& opts = {});

RateReport achievable_rate(const Link& link, const TransmissionFn& t_of_f, const RateOptions& opts = {});
RateReport achievable_rate(const SystemConfig& cfg, const TransmissionFn& t_of_f, const RateOptions& opts = {});

/// Power transmission |T~|^2 of the bare TM1 circuit of radius a.
TransmissionFn unmatched_profile(double radius_m, double c);
TransmissionFn optimal_profile(const matching::MatchingSolution& sol);

/// Rate options with the support edge of `sol` registered as a breakpoint.
RateOptions options_for(const matching::MatchingSolution& sol, RateOptions base = {});

enum class MatchingMode { optimal, none, shannon };
std::string_view mode_name(MatchingMode mode);
MatchingMode parse_mode(std::string_view name);

enum class RowStatus { ok, infeasible, excluded };
std::string_view status_name(RowStatus status);

struct FractionRow {
    double lambda_over_a = 0.0;
    MatchingMode mode = MatchingMode::optimal;
    double rate_bps = 0.0;
    double shannon_bps = 0.0;
    double fraction = 0.0;
    RowStatus status = RowStatus::ok;
    std::string message;
};

struct SweepOptions {
    RateOptions rate;
    matching::SolverOptions solver;
};

/// One row per ratio: the antenna radius is set to lambda/ratio and the rate is evaluated
/// with T* (optimal), |T~|^2 (none) or t = 1 (shannon). Solver failures are recorded in
/// the row status and the sweep continues.
std::vector<FractionRow> capacity_fraction_sweep(const SystemConfig& base, const std::vector<double>& ratios,
                                                 MatchingMode mode, const SweepOptions& opts = {});

}  // namespace churate::rate
