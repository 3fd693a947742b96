#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "churate/model.hpp"
#include "churate/rate.hpp"

namespace churate::experiments {

enum class ScenarioKind { snr_profile, fraction_vs_size, rate_vs_bw, fraction_vs_power, interference_vs_density };

std::string_view kind_name(ScenarioKind kind);
ScenarioKind parse_kind(std::string_view name);

/// CSV header of each kind.
std::string_view csv_header(ScenarioKind kind);

/// Name of the swept parameter for each kind: lambda_over_a, bw_over_fc or rho.
std::string_view sweep_parameter(ScenarioKind kind);

/// A plot family. `sweep` is the abscissa; `series` is the second grouping column:
///   snr_profile        sweep lambda_over_a, no series
///   fraction_vs_size   sweep lambda_over_a, series bw_over_fc
///   rate_vs_bw         sweep bw_over_fc, antenna size from base.radius_m
///   fraction_vs_power  sweep lambda_over_a, series power_w
///   interference       sweep rho, series lambda_over_a
/// Total transmit power is held fixed whenever the bandwidth changes.
struct Scenario {
    std::string name;
    std::string description;
    ScenarioKind kind = ScenarioKind::snr_profile;
    SystemConfig base;
    std::vector<double> sweep;
    std::vector<double> series;
    std::vector<rate::MatchingMode> modes;
    // interference_vs_density
    double alpha = 2.5;
    double distance_over_r0 = 1.0 / 3.0;
    bool closed_form = false;  // also emit mode none_closed_form

    void validate() const;
};

const std::vector<Scenario>& builtin_scenarios();
const Scenario& find_builtin(std::string_view name);

/// Overlays a JSON document on `base`. Recognised keys: the SystemConfig keys plus
/// name, description, kind, sweep (list, or {"parameter", "values"}), series, modes, alpha,
/// distance_over_r0, closed_form.
Scenario scenario_from_json(const nlohmann::json& doc, const Scenario& base);

struct RunOptions {
    std::uint64_t seed = 1;
    double rel_tol = 1e-10;
    unsigned jobs = 0;  // 0: hardware concurrency
    std::size_t trace_points = 512;
    int adaptive_nodes = 16;
    int fixed_nodes = 64;
};

struct RunResult {
    std::string csv;  // header and body
    std::size_t rows = 0;
    std::size_t failed_rows = 0;
    double wall_seconds = 0.0;
};

/// Evaluates every row of the scenario. Rows are computed on a worker pool and emitted in
/// input order, so the CSV body depends only on the scenario and options.
RunResult run(const Scenario& sc, const RunOptions& opts = {});

/// Writes <dir>/<name>.csv and <dir>/<name>.json (metadata) and returns the CSV path.
std::filesystem::path write_artifacts(const Scenario& sc, const RunOptions& opts, const RunResult& res,
                                      const std::filesystem::path& dir);

nlohmann::json run_metadata(const Scenario& sc, const RunOptions& opts, const RunResult& res);

std::string git_hash();

/// Rate of every (configuration, antenna size) pair a scenario touches, for ordering checks.
struct RatePoint {
    std::string label;
    double optimal_bps = 0.0;
    double unmatched_bps = 0.0;
    double shannon_bps = 0.0;
    bool solved = true;
};
std::vector<RatePoint> rate_points(const Scenario& sc, const RunOptions& opts = {});

}  // namespace churate::experiments
