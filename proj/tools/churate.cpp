#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "churate/errors.hpp"
#include "churate/experiments.hpp"
#include "churate/matching.hpp"

namespace {

namespace ex = churate::experiments;

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kIo = 3 };

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw churate::ConfigError(path + ": " + e.what());
    }
}

ex::Scenario resolve(const std::string& name, const std::string& config_path) {
    if (config_path.empty()) {
        if (name.empty()) throw churate::ConfigError("either --scenario or --config is required");
        return ex::find_builtin(name);
    }
    const auto doc = read_json(config_path);
    std::string base_name = name;
    if (base_name.empty() && doc.contains("scenario")) base_name = doc["scenario"].get<std::string>();
    ex::Scenario base;
    if (!base_name.empty()) base = ex::find_builtin(base_name);
    return ex::scenario_from_json(doc, base);
}

int cmd_list() {
    for (const auto& s : ex::builtin_scenarios())
        std::printf("%-7s %-24s %s\n", s.name.c_str(), std::string(ex::kind_name(s.kind)).c_str(),
                    s.description.c_str());
    return kOk;
}

struct RunArgs {
    std::string scenario;
    std::string config;
    std::string out = "results";
    ex::RunOptions opts;
    bool quiet = false;
};

int cmd_run(const RunArgs& a) {
    const ex::Scenario sc = resolve(a.scenario, a.config);
    const auto res = ex::run(sc, a.opts);
    const auto path = ex::write_artifacts(sc, a.opts, res, a.out);
    if (!a.quiet)
        std::fprintf(stderr, "%s: %zu rows (%zu failed) in %.2f s -> %s\n", sc.name.c_str(), res.rows,
                     res.failed_rows, res.wall_seconds, path.string().c_str());
    return kOk;
}

struct SolveArgs {
    std::string config;
    double fc = 600e6;
    double bw_over_fc = 0.2;
    double power = 4.0;
    double lambda_over_a = 20.0;
    bool kkt = false;
};

int cmd_solve(const SolveArgs& a) {
    churate::SystemConfig cfg;
    if (!a.config.empty()) cfg = churate::config_from_json(read_json(a.config));
    cfg.fc_hz = a.fc;
    cfg.bw_hz = a.bw_over_fc * a.fc;
    cfg.set_total_power(a.power);
    cfg.set_lambda_over_a(a.lambda_over_a);
    cfg.validate();
    const auto sol = churate::matching::solve_for_size(cfg, cfg.radius_m);
    nlohmann::json out = churate::matching::solution_to_json(sol);
    out.erase("t_star_samples");
    if (a.kkt) {
        const auto report = churate::matching::verify_kkt(sol);
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : report.checks)
            checks.push_back({{"index", c.index}, {"name", c.name}, {"pass", c.pass}, {"magnitude", c.magnitude},
                              {"note", c.note}});
        out["kkt"] = checks;
    }
    std::cout << out.dump(2) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Achievable rates of Chu-limited antennas with optimal matching"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "churate " + ex::git_hash());

    app.add_subcommand("list", "List built-in scenarios");

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario and write <out>/<name>.csv and .json");
    run_cmd->add_option("--scenario,-s", run.scenario, "Built-in scenario name")->envname("CHURATE_SCENARIO");
    run_cmd->add_option("--config,-c", run.config, "JSON overlay or custom scenario")
        ->check(CLI::ExistingFile)
        ->envname("CHURATE_CONFIG");
    run_cmd->add_option("--out,-o", run.out, "Output directory")->envname("CHURATE_OUT");
    run_cmd->add_option("--seed", run.opts.seed, "Random seed")->envname("CHURATE_SEED");
    run_cmd->add_option("--rel-tol", run.opts.rel_tol, "Relative tolerance of the rate quadrature")
        ->check(CLI::PositiveNumber)
        ->envname("CHURATE_REL_TOL");
    run_cmd->add_option("--jobs,-j", run.opts.jobs, "Worker threads (0: all cores)")->envname("CHURATE_JOBS");
    run_cmd->add_option("--trace-points", run.opts.trace_points, "Frequency samples per SNR profile")
        ->check(CLI::Range(2, 1 << 20))
        ->envname("CHURATE_TRACE_POINTS");
    run_cmd->add_option("--adaptive-nodes", run.opts.adaptive_nodes, "Gamma quadrature nodes, adaptive antenna")
        ->check(CLI::Range(1, 256));
    run_cmd->add_option("--fixed-nodes", run.opts.fixed_nodes, "Gamma quadrature nodes, fixed antenna")
        ->check(CLI::Range(1, 256));
    run_cmd->add_flag("--quiet,-q", run.quiet, "Suppress the summary line");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve the matching problem for one configuration");
    solve_cmd->add_option("--config,-c", solve.config, "SystemConfig JSON")->check(CLI::ExistingFile);
    solve_cmd->add_option("--fc", solve.fc, "Carrier frequency [Hz]")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--bw-over-fc", solve.bw_over_fc, "Bandwidth relative to fc")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--power", solve.power, "Total transmit power [W]")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--lambda-over-a", solve.lambda_over_a, "Wavelength over antenna radius")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_flag("--kkt", solve.kkt, "Append optimality checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (app.got_subcommand("list")) return cmd_list();
        if (app.got_subcommand("run")) return cmd_run(run);
        if (app.got_subcommand("solve")) return cmd_solve(solve);
    } catch (const churate::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfig;
    } catch (const churate::DomainError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfig;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfig;
    } catch (const churate::IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kIo;
    } catch (const std::ios_base::failure& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kIo;
    } catch (const churate::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFailure;
    }
    return kOk;
}
