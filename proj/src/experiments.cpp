#include "churate/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "churate/channel.hpp"
#include "churate/errors.hpp"
#include "churate/interference.hpp"
#include "churate/matching.hpp"

#ifndef CHURATE_GIT_HASH
#define CHURATE_GIT_HASH "unknown"
#endif

namespace churate::experiments {

namespace {

using rate::MatchingMode;
using rate::RowStatus;

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

std::string join(std::initializer_list<std::string> cells) {
    std::string line;
    bool first = true;
    for (const auto& c : cells) {
        if (!first) line += ',';
        line += c;
        first = false;
    }
    return line;
}

std::vector<double> range(double lo, double hi, double step) {
    std::vector<double> v;
    const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int i = 0; i <= n; ++i) v.push_back(lo + step * i);
    return v;
}

struct TaskOutput {
    std::vector<std::string> lines;
    std::size_t failed = 0;
};

using Task = std::function<TaskOutput()>;

std::vector<TaskOutput> run_pool(const std::vector<Task>& tasks, unsigned jobs) {
    std::vector<TaskOutput> out(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, std::max<std::size_t>(tasks.size(), 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                out[i] = tasks[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

rate::RateOptions rate_options(const RunOptions& opts) {
    rate::RateOptions r;
    r.quadrature.rel_tol = opts.rel_tol;
    r.trace_points = opts.trace_points;
    return r;
}

SystemConfig with_bandwidth(SystemConfig cfg, double bw_over_fc) {
    const double p = cfg.total_power();
    cfg.bw_hz = bw_over_fc * cfg.fc_hz;
    cfg.set_total_power(p);
    return cfg;
}

SystemConfig with_ratio(SystemConfig cfg, double lambda_over_a) {
    cfg.set_lambda_over_a(lambda_over_a);
    return cfg;
}

// Rate of one transmission mode; nullopt-like NaN with a status on solver failure.
struct ModeRate {
    double rate = std::nan("");
    RowStatus status = RowStatus::ok;
};

ModeRate mode_rate(const Link& link, double radius, MatchingMode mode, const rate::RateOptions& ropts,
                   double shannon) {
    ModeRate r;
    try {
        switch (mode) {
            case MatchingMode::optimal: {
                const auto sol = matching::solve_for_size(link, radius);
                r.rate = rate::rate_integral(link, rate::optimal_profile(sol), rate::options_for(sol, ropts));
                break;
            }
            case MatchingMode::none:
                r.rate = rate::rate_integral(link, rate::unmatched_profile(radius, link.c), ropts);
                break;
            case MatchingMode::shannon:
                r.rate = shannon;
                break;
        }
    } catch (const InfeasibleError&) {
        r.status = RowStatus::infeasible;
    } catch (const IterationLimitError&) {
        r.status = RowStatus::infeasible;
    } catch (const ConvergenceError&) {
        r.status = RowStatus::infeasible;
    }
    return r;
}

std::vector<Task> snr_tasks(const Scenario& sc, const RunOptions& opts) {
    std::vector<Task> tasks;
    for (double ratio : sc.sweep) {
        for (MatchingMode mode : sc.modes) {
            tasks.push_back([&sc, &opts, ratio, mode] {
                const SystemConfig cfg = with_ratio(sc.base, ratio);
                const Link link(cfg);
                TaskOutput out;
                rate::TransmissionFn t_of_f;
                try {
                    switch (mode) {
                        case MatchingMode::optimal:
                            t_of_f = rate::optimal_profile(matching::solve_for_size(link, cfg.radius_m));
                            break;
                        case MatchingMode::none:
                            t_of_f = rate::unmatched_profile(cfg.radius_m, link.c);
                            break;
                        case MatchingMode::shannon:
                            t_of_f = [](double) { return 1.0; };
                            break;
                    }
                } catch (const InfeasibleError&) {
                    out.failed = opts.trace_points;
                } catch (const IterationLimitError&) {
                    out.failed = opts.trace_points;
                }
                const std::string m(rate::mode_name(mode));
                for (std::size_t i = 0; i < opts.trace_points; ++i) {
                    const double frac = opts.trace_points == 1 ? 0.5 : double(i) / double(opts.trace_points - 1);
                    const double f = link.band_lo + frac * (link.band_hi - link.band_lo);
                    const double snr = t_of_f ? rate::snr_at(link, f, t_of_f(f)) : std::nan("");
                    out.lines.push_back(join({num(f), num(ratio), m, num(snr)}));
                }
                return out;
            });
        }
    }
    return tasks;
}

// Shared shape of fraction_vs_size and fraction_vs_power rows.
Task fraction_task(const Scenario& sc, const RunOptions& opts, const SystemConfig& cfg, double ratio,
                   std::function<std::string(MatchingMode, double, RowStatus)> format) {
    return [&sc, &opts, cfg, ratio, format] {
        const Link link(cfg);
        const auto ropts = rate_options(opts);
        const double shannon = rate::shannon_rate(link, ropts);
        TaskOutput out;
        for (MatchingMode mode : sc.modes) {
            const ModeRate r = mode_rate(link, cfg.wavelength() / ratio, mode, ropts, shannon);
            if (r.status != RowStatus::ok) ++out.failed;
            out.lines.push_back(format(mode, r.rate / shannon, r.status));
        }
        return out;
    };
}

std::vector<Task> fraction_size_tasks(const Scenario& sc, const RunOptions& opts) {
    std::vector<Task> tasks;
    for (double bw : sc.series) {
        const SystemConfig cfg = with_bandwidth(sc.base, bw);
        for (double ratio : sc.sweep) {
            tasks.push_back(fraction_task(sc, opts, with_ratio(cfg, ratio), ratio,
                                          [ratio, bw](MatchingMode mode, double frac, RowStatus st) {
                                              return join({num(ratio), num(bw), std::string(rate::mode_name(mode)),
                                                           num(frac), std::string(rate::status_name(st))});
                                          }));
        }
    }
    return tasks;
}

std::vector<Task> fraction_power_tasks(const Scenario& sc, const RunOptions& opts) {
    std::vector<Task> tasks;
    for (double power : sc.series) {
        SystemConfig cfg = sc.base;
        cfg.set_total_power(power);
        for (double ratio : sc.sweep) {
            tasks.push_back(fraction_task(sc, opts, with_ratio(cfg, ratio), ratio,
                                          [ratio, power](MatchingMode mode, double frac, RowStatus) {
                                              return join({num(ratio), num(power), std::string(rate::mode_name(mode)),
                                                           num(frac)});
                                          }));
        }
    }
    return tasks;
}

std::vector<Task> rate_bw_tasks(const Scenario& sc, const RunOptions& opts) {
    std::vector<Task> tasks;
    for (double bw : sc.sweep) {
        tasks.push_back([&sc, &opts, bw] {
            const SystemConfig cfg = with_bandwidth(sc.base, bw);
            const Link link(cfg);
            const auto ropts = rate_options(opts);
            const double shannon = rate::shannon_rate(link, ropts);
            TaskOutput out;
            for (MatchingMode mode : sc.modes) {
                const ModeRate r = mode_rate(link, cfg.radius_m, mode, ropts, shannon);
                if (r.status != RowStatus::ok) ++out.failed;
                out.lines.push_back(join({num(bw), std::string(rate::mode_name(mode)), num(r.rate)}));
            }
            return out;
        });
    }
    return tasks;
}

struct InterferencePoint {
    SystemConfig cfg;
    interference::InterferenceField field;
};

InterferencePoint interference_point(const Scenario& sc, double rho, double ratio) {
    InterferencePoint p;
    p.cfg = with_ratio(sc.base, ratio);
    const double r0 = 1.0 / std::sqrt(kPi * rho);
    p.cfg.distance_m = sc.distance_over_r0 * r0;
    p.field = {rho, sc.alpha, r0, p.cfg.emax_w_per_hz, p.cfg.wavelength()};
    return p;
}

std::vector<Task> interference_tasks(const Scenario& sc, const RunOptions& opts) {
    std::vector<Task> tasks;
    for (double ratio : sc.series) {
        for (double rho : sc.sweep) {
            tasks.push_back([&sc, &opts, ratio, rho] {
                const InterferencePoint p = interference_point(sc, rho, ratio);
                const Link link(p.cfg);
                const auto gm = interference::gamma_match(p.field);
                interference::ExpectationOptions eopts;
                eopts.nodes = opts.fixed_nodes;
                eopts.rate = rate_options(opts);
                const double shannon = interference::shannon_rate(link, gm, eopts);
                const double radius = p.cfg.radius_m;
                TaskOutput out;
                auto row = [&](std::string_view mode, double value, RowStatus st) {
                    out.lines.push_back(join({num(rho), num(ratio), std::string(mode), num(value),
                                              std::string(rate::status_name(st))}));
                };
                for (MatchingMode mode : sc.modes) {
                    switch (mode) {
                        case MatchingMode::optimal: {
                            interference::AdaptiveOptions aopts;
                            aopts.nodes = opts.adaptive_nodes;
                            aopts.rate = eopts.rate;
                            try {
                                const auto res = interference::rate_adaptive_antenna(link, radius, gm, aopts);
                                row("optimal", res.rate_bps / res.shannon_bps,
                                    res.failed_nodes > 0 ? RowStatus::excluded : RowStatus::ok);
                            } catch (const Error&) {
                                ++out.failed;
                                row("optimal", std::nan(""), RowStatus::infeasible);
                            }
                            break;
                        }
                        case MatchingMode::none: {
                            const auto t = rate::unmatched_profile(radius, link.c);
                            row("none", interference::rate_fixed_antenna_numeric(link, t, gm, eopts) / shannon,
                                RowStatus::ok);
                            break;
                        }
                        case MatchingMode::shannon:
                            row("shannon", 1.0, RowStatus::ok);
                            break;
                    }
                }
                if (sc.closed_form) {
                    const auto t = rate::unmatched_profile(radius, link.c);
                    const auto cf = interference::rate_fixed_antenna_closed_form(link, t, gm, eopts.rate);
                    row("none_closed_form", cf.rate_bps / shannon, RowStatus::ok);
                }
                return out;
            });
        }
    }
    return tasks;
}

Scenario make(std::string name, std::string description, ScenarioKind kind, double fc, double bw, double power,
              std::vector<double> sweep, std::vector<double> series, std::vector<MatchingMode> modes) {
    Scenario s;
    s.name = std::move(name);
    s.description = std::move(description);
    s.kind = kind;
    s.base.fc_hz = fc;
    s.base.bw_hz = bw;
    s.base.set_total_power(power);
    s.sweep = std::move(sweep);
    s.series = std::move(series);
    s.modes = std::move(modes);
    return s;
}

std::vector<double> number_list(const nlohmann::json& j, const char* key) {
    if (!j.is_array()) throw ConfigError(std::string(key) + " must be a list of numbers");
    std::vector<double> v;
    for (const auto& x : j) {
        if (!x.is_number()) throw ConfigError(std::string(key) + " must be a list of numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

}  // namespace

std::string_view kind_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::snr_profile: return "snr_profile";
        case ScenarioKind::fraction_vs_size: return "fraction_vs_size";
        case ScenarioKind::rate_vs_bw: return "rate_vs_bw";
        case ScenarioKind::fraction_vs_power: return "fraction_vs_power";
        case ScenarioKind::interference_vs_density: return "interference_vs_density";
    }
    return "unknown";
}

ScenarioKind parse_kind(std::string_view name) {
    for (auto k : {ScenarioKind::snr_profile, ScenarioKind::fraction_vs_size, ScenarioKind::rate_vs_bw,
                   ScenarioKind::fraction_vs_power, ScenarioKind::interference_vs_density})
        if (kind_name(k) == name) return k;
    if (name == "interference") return ScenarioKind::interference_vs_density;
    throw ConfigError("unknown scenario kind: " + std::string(name));
}

std::string_view csv_header(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::snr_profile: return "f_hz,lambda_over_a,mode,snr";
        case ScenarioKind::fraction_vs_size: return "lambda_over_a,bw_over_fc,mode,fraction,status";
        case ScenarioKind::rate_vs_bw: return "bw_over_fc,mode,rate_bps";
        case ScenarioKind::fraction_vs_power: return "lambda_over_a,power_w,mode,fraction";
        case ScenarioKind::interference_vs_density: return "rho,lambda_over_a,mode,rate_ratio,status";
    }
    return "";
}

std::string_view sweep_parameter(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::rate_vs_bw: return "bw_over_fc";
        case ScenarioKind::interference_vs_density: return "rho";
        default: return "lambda_over_a";
    }
}

void Scenario::validate() const {
    if (name.empty()) throw ConfigError("scenario name is empty");
    base.validate();
    if (sweep.empty()) throw ConfigError("scenario " + name + ": sweep list is empty");
    for (double v : sweep)
        if (!(v > 0) || !std::isfinite(v)) throw ConfigError("scenario " + name + ": sweep values must be positive");
    const bool needs_series = kind == ScenarioKind::fraction_vs_size || kind == ScenarioKind::fraction_vs_power ||
                              kind == ScenarioKind::interference_vs_density;
    if (needs_series && series.empty()) throw ConfigError("scenario " + name + ": series list is empty");
    for (double v : series)
        if (!(v > 0) || !std::isfinite(v)) throw ConfigError("scenario " + name + ": series values must be positive");
    if (modes.empty() && !closed_form) throw ConfigError("scenario " + name + ": no matching modes selected");
    if (kind == ScenarioKind::interference_vs_density) {
        if (!(alpha > 2)) throw ConfigError("scenario " + name + ": alpha must exceed 2");
        if (!(distance_over_r0 > 0)) throw ConfigError("scenario " + name + ": distance_over_r0 must be positive");
    }
    if (!(base.noise_factor > 1)) throw ConfigError("scenario " + name + ": noise_factor must exceed 1");
}

const std::vector<Scenario>& builtin_scenarios() {
    static const std::vector<Scenario> all = [] {
        using K = ScenarioKind;
        const std::vector<MatchingMode> two = {MatchingMode::optimal, MatchingMode::none};
        const std::vector<MatchingMode> three = {MatchingMode::optimal, MatchingMode::none, MatchingMode::shannon};
        const std::vector<double> sizes = {20, 15, 10};
        const std::vector<double> ratios = range(5, 20, 1);
        const std::vector<double> bws = range(0.1, 2.0, 0.1);
        std::vector<Scenario> v;
        v.push_back(make("fig7a", "SNR profile, fc = 600 MHz, BW = 0.2 fc, P = 4 W", K::snr_profile, 600e6, 120e6, 4,
                         sizes, {}, two));
        v.push_back(make("fig7b", "SNR profile, fc = 5 GHz, BW = 0.2 fc, P = 4 W", K::snr_profile, 5e9, 1e9, 4, sizes,
                         {}, two));
        v.push_back(make("fig7c", "SNR profile, fc = 30 GHz, BW = 0.2 fc, P = 4 W", K::snr_profile, 30e9, 6e9, 4,
                         sizes, {}, two));
        v.push_back(make("fig7d", "SNR profile, ultrawideband fc = 60 GHz, BW = 120 GHz, P = 4 W", K::snr_profile,
                         60e9, 120e9, 4, sizes, {}, two));
        v.push_back(make("fig8", "Capacity fraction vs lambda/a, fc = 5 GHz, P = 4 W, BW in {0.2,0.4,0.6,0.8} fc",
                         K::fraction_vs_size, 5e9, 1e9, 4, ratios, {0.2, 0.4, 0.6, 0.8}, two));
        v.push_back(make("fig9a", "Rate vs bandwidth, fc = 600 MHz, P = 4 W, lambda/a = 20", K::rate_vs_bw, 600e6,
                         120e6, 4, bws, {}, three));
        v.push_back(make("fig9b", "Rate vs bandwidth, fc = 5 GHz, P = 4 W, lambda/a = 20", K::rate_vs_bw, 5e9, 1e9, 4,
                         bws, {}, three));
        v.push_back(make("fig9c", "Rate vs bandwidth, low SNR: fc = 600 MHz, P = 10 mW, lambda/a = 20",
                         K::rate_vs_bw, 600e6, 120e6, 0.01, bws, {}, three));
        for (auto& s : v)
            if (s.kind == K::rate_vs_bw) s.base.set_lambda_over_a(20);
        v.push_back(make("fig10", "Capacity fraction vs lambda/a, fc = 5 GHz, BW = 0.2 fc, P in {4, 40} W",
                         K::fraction_vs_power, 5e9, 1e9, 4, ratios, {4, 40}, two));
        std::vector<double> rho;
        for (int e = -20; e <= -10; ++e) rho.push_back(std::pow(10.0, 0.5 * e));
        Scenario f11 = make("fig11",
                            "Rate ratio vs interferer density, fc = 600 MHz, BW = 0.25 fc, P = 6 W, alpha = 2.5, "
                            "d = R0/3, lambda/a in {50, 33.33}",
                            K::interference_vs_density, 600e6, 150e6, 6, rho, {50, 33.33}, two);
        f11.closed_form = true;
        v.push_back(f11);
        return v;
    }();
    return all;
}

const Scenario& find_builtin(std::string_view name) {
    for (const auto& s : builtin_scenarios())
        if (s.name == name) return s;
    throw ConfigError("unknown scenario: " + std::string(name));
}

Scenario scenario_from_json(const nlohmann::json& doc, const Scenario& base) {
    if (!doc.is_object()) throw ConfigError("scenario document must be a JSON object");
    static const std::vector<std::string> extra = {"name",  "description",      "kind",       "sweep", "series",
                                                   "modes", "distance_over_r0", "closed_form", "alpha", "scenario"};
    Scenario sc = base;
    if (doc.contains("kind")) sc.kind = parse_kind(doc["kind"].get<std::string>());
    sc.base = config_from_json(doc, base.base, extra);
    if (doc.contains("name")) sc.name = doc["name"].get<std::string>();
    if (doc.contains("description")) sc.description = doc["description"].get<std::string>();
    if (doc.contains("sweep")) {
        const auto& sw = doc["sweep"];
        if (sw.is_object()) {
            if (!sw.contains("values")) throw ConfigError("sweep object needs a values list");
            if (sw.contains("parameter") && sw["parameter"].get<std::string>() != sweep_parameter(sc.kind))
                throw ConfigError("sweep parameter for " + std::string(kind_name(sc.kind)) + " must be " +
                                  std::string(sweep_parameter(sc.kind)));
            sc.sweep = number_list(sw["values"], "sweep.values");
        } else {
            sc.sweep = number_list(sw, "sweep");
        }
    }
    if (doc.contains("series")) sc.series = number_list(doc["series"], "series");
    if (doc.contains("modes")) {
        if (!doc["modes"].is_array()) throw ConfigError("modes must be a list of strings");
        sc.modes.clear();
        for (const auto& m : doc["modes"]) sc.modes.push_back(rate::parse_mode(m.get<std::string>()));
    }
    if (doc.contains("alpha")) sc.alpha = doc["alpha"].get<double>();
    if (doc.contains("distance_over_r0")) sc.distance_over_r0 = doc["distance_over_r0"].get<double>();
    if (doc.contains("closed_form")) sc.closed_form = doc["closed_form"].get<bool>();
    sc.validate();
    return sc;
}

RunResult run(const Scenario& sc, const RunOptions& opts) {
    sc.validate();
    if (!(opts.rel_tol > 0)) throw ConfigError("rel_tol must be positive");
    if (opts.trace_points < 2) throw ConfigError("trace_points must be at least 2");
    const auto start = std::chrono::steady_clock::now();
    std::vector<Task> tasks;
    switch (sc.kind) {
        case ScenarioKind::snr_profile: tasks = snr_tasks(sc, opts); break;
        case ScenarioKind::fraction_vs_size: tasks = fraction_size_tasks(sc, opts); break;
        case ScenarioKind::rate_vs_bw: tasks = rate_bw_tasks(sc, opts); break;
        case ScenarioKind::fraction_vs_power: tasks = fraction_power_tasks(sc, opts); break;
        case ScenarioKind::interference_vs_density: tasks = interference_tasks(sc, opts); break;
    }
    const auto outputs = run_pool(tasks, opts.jobs);
    RunResult res;
    res.csv = std::string(csv_header(sc.kind)) + '\n';
    for (const auto& o : outputs) {
        for (const auto& line : o.lines) {
            res.csv += line;
            res.csv += '\n';
            ++res.rows;
        }
        res.failed_rows += o.failed;
    }
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

std::string git_hash() { return CHURATE_GIT_HASH; }

nlohmann::json run_metadata(const Scenario& sc, const RunOptions& opts, const RunResult& res) {
    nlohmann::json modes = nlohmann::json::array();
    for (auto m : sc.modes) modes.push_back(std::string(rate::mode_name(m)));
    return {{"scenario", sc.name},
            {"description", sc.description},
            {"kind", std::string(kind_name(sc.kind))},
            {"git_hash", git_hash()},
            {"seed", opts.seed},
            {"tolerances",
             {{"rate_rel_tol", opts.rel_tol},
              {"solver_rel_tol", matching::SolverOptions{}.quadrature.rel_tol},
              {"adaptive_nodes", opts.adaptive_nodes},
              {"fixed_nodes", opts.fixed_nodes}}},
            {"wall_time_s", res.wall_seconds},
            {"rows", res.rows},
            {"failed_rows", res.failed_rows},
            {"config", config_to_json(sc.base)},
            {"sweep", {{"parameter", std::string(sweep_parameter(sc.kind))}, {"values", sc.sweep}}},
            {"series", sc.series},
            {"modes", modes}};
}

std::filesystem::path write_artifacts(const Scenario& sc, const RunOptions& opts, const RunResult& res,
                                      const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    const auto csv_path = dir / (sc.name + ".csv");
    const auto meta_path = dir / (sc.name + ".json");
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw IoError("cannot open " + csv_path.string());
        out << res.csv;
        if (!out) throw IoError("write failed: " + csv_path.string());
    }
    {
        std::ofstream out(meta_path);
        if (!out) throw IoError("cannot open " + meta_path.string());
        out << run_metadata(sc, opts, res).dump(2) << '\n';
        if (!out) throw IoError("write failed: " + meta_path.string());
    }
    return csv_path;
}

std::vector<RatePoint> rate_points(const Scenario& sc, const RunOptions& opts) {
    sc.validate();
    std::vector<std::pair<std::string, std::pair<SystemConfig, double>>> configs;  // label, (cfg, extra noise)
    auto add = [&](std::string label, const SystemConfig& cfg, double extra) {
        configs.push_back({std::move(label), {cfg, extra}});
    };
    switch (sc.kind) {
        case ScenarioKind::snr_profile:
            for (double r : sc.sweep) add("lambda_over_a=" + num(r), with_ratio(sc.base, r), 0.0);
            break;
        case ScenarioKind::fraction_vs_size:
            for (double bw : sc.series)
                for (double r : sc.sweep)
                    add("bw=" + num(bw) + " lambda_over_a=" + num(r), with_ratio(with_bandwidth(sc.base, bw), r), 0.0);
            break;
        case ScenarioKind::rate_vs_bw:
            for (double bw : sc.sweep) add("bw=" + num(bw), with_bandwidth(sc.base, bw), 0.0);
            break;
        case ScenarioKind::fraction_vs_power:
            for (double p : sc.series)
                for (double r : sc.sweep) {
                    SystemConfig cfg = sc.base;
                    cfg.set_total_power(p);
                    add("power=" + num(p) + " lambda_over_a=" + num(r), with_ratio(cfg, r), 0.0);
                }
            break;
        case ScenarioKind::interference_vs_density:
            for (double r : sc.series)
                for (double rho : sc.sweep) {
                    const auto p = interference_point(sc, rho, r);
                    add("rho=" + num(rho) + " lambda_over_a=" + num(r), p.cfg,
                        interference::interference_moments(p.field).mean);
                }
            break;
    }
    std::vector<Task> tasks;
    std::vector<RatePoint> points(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
        tasks.push_back([&, i] {
            const auto& [label, entry] = configs[i];
            const Link link = Link(entry.first).with_extra_noise(entry.second);
            const auto ropts = rate_options(opts);
            RatePoint pt;
            pt.label = label;
            pt.shannon_bps = rate::shannon_rate(link, ropts);
            pt.unmatched_bps = rate::rate_integral(link, rate::unmatched_profile(entry.first.radius_m, link.c), ropts);
            const ModeRate opt = mode_rate(link, entry.first.radius_m, MatchingMode::optimal, ropts, pt.shannon_bps);
            pt.solved = opt.status == RowStatus::ok;
            pt.optimal_bps = opt.rate;
            points[i] = pt;
            return TaskOutput{};
        });
    }
    run_pool(tasks, opts.jobs);
    return points;
}

}  // namespace churate::experiments
