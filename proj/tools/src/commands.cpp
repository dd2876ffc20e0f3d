#include "colsafe/app/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>

#include "colsafe/app/output.hpp"
#include "colsafe/concentration.hpp"
#include "colsafe/gp.hpp"
#include "colsafe/parallel.hpp"
#include "colsafe/rng.hpp"

namespace fs = std::filesystem;

namespace colsafe::app {
namespace {

ExperimentConfig load_with_overrides(const std::string& path, const CliOverrides& overrides) {
    ExperimentConfig config = load_config(path);
    if (overrides.seed) config.seed = *overrides.seed;
    if (overrides.out) config.output = *overrides.out;
    if (overrides.repeats) {
        if (*overrides.repeats < 1) throw ConfigError("run.repeats", 0, "must be at least 1");
        config.repeats = *overrides.repeats;
    }
    return config;
}

/// Runs one method into `dir`: trace.csv, summary.json, safe_set_final.csv.
RunResult run_into(const std::string& method, const Experiment& experiment, std::uint64_t seed, Index budget,
                   const fs::path& dir) {
    fs::create_directories(dir);
    const Problem& problem = experiment.problem;
    TraceWriter trace((dir / "trace.csv").string(), problem.grid.dim(), problem.constraints);
    RunOptions options = experiment.options;
    options.seed = seed;
    options.observer = [&](const TraceRow& row, const LoopState&, const BoundState&) { trace.write(row); };
    RunResult result = run_method(method, experiment, options);
    write_json((dir / "summary.json").string(), make_summary(result, problem, method, seed, budget));
    write_safe_set_csv((dir / "safe_set_final.csv").string(), problem.grid, result.final_state);
    return result;
}

template <class F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kAcceptanceFailure;
    }
}

}  // namespace

Experiment build_experiment(const ExperimentConfig& config) {
    const Index default_resolution = config.problem.name == "lqr" ? 41 : 21;
    Problem problem = make_problem(config.problem.name, config.problem.sigma.value_or(0.01),
                                   config.problem.resolution.value_or(default_resolution));

    EstimatorConfig estimator;
    estimator.kernel = config.kernel;
    estimator.delta = config.delta;
    estimator.sigma = config.sigma.value_or(problem.sigma > 0.0 ? problem.sigma : 1e-6);
    estimator.lipschitz = config.lipschitz.value_or(problem.lipschitz);
    estimator.validate();

    RunOptions options;
    options.budget = config.budget;
    options.seed = config.seed;
    options.lipschitz = estimator.lipschitz;
    options.record_wall_times = config.wall_times;
    return Experiment{std::move(problem), estimator, config.gp, options};
}

RunResult run_method(const std::string& method, const Experiment& experiment, const RunOptions& options) {
    if (method == "colsafe") return run_colsafe(experiment.problem, experiment.estimator, options);
    if (method == "gp-safeopt") return run_safeopt_baseline(experiment.problem, experiment.gp, options);
    throw std::invalid_argument("unknown method '" + method + "'");
}

int cmd_run(const std::string& config_path, const CliOverrides& overrides) {
    return guarded([&] {
        const ExperimentConfig config = load_with_overrides(config_path, overrides);
        const Experiment experiment = build_experiment(config);
        const fs::path out(config.output);
        fs::create_directories(out);
        std::ofstream((out / "config.resolved.yaml"), std::ios::binary | std::ios::trunc) << serialize_config(config);

        if (config.repeats == 1) {
            const RunResult r = run_into(config.method, experiment, config.seed, config.budget, out);
            std::cout << config.method << ": " << r.rows.size() << " iterations, best guess "
                      << r.best_point.transpose() << ", true violations " << r.total_true_violations << '\n';
            return int(kSuccess);
        }

        std::vector<std::string> errors(config.repeats);
        parallel_for(config.repeats, [&](Index k) {
            char name[32];
            std::snprintf(name, sizeof name, "run_%03zu", k);
            try {
                run_into(config.method, experiment, derive_seed(config.seed, Stream::Repeat, k), config.budget,
                         out / name);
            } catch (const std::exception& e) {
                errors[k] = e.what();
            }
        });
        int status = kSuccess;
        for (Index k = 0; k < errors.size(); ++k) {
            if (!errors[k].empty()) {
                std::cerr << "repeat " << k << " failed: " << errors[k] << '\n';
                status = kAcceptanceFailure;
            }
        }
        std::cout << config.repeats << " runs written to " << out.string() << '\n';
        return status;
    });
}

int cmd_compare(const std::string& config_path, const CliOverrides& overrides) {
    return guarded([&] {
        const ExperimentConfig config = load_with_overrides(config_path, overrides);
        if (config.compare.empty()) throw ConfigError("compare", 0, "needs at least one method");
        const Experiment experiment = build_experiment(config);
        const fs::path out(config.output);
        fs::create_directories(out);

        std::ofstream timing(out / "timing.csv", std::ios::binary | std::ios::trunc);
        timing << "n,method,t_update_select_ms,t_bounds_ms,t_sets_ms,t_select_ms,t_ingest_ms,safe_size\n";
        nlohmann::json joint;
        joint["problem"] = experiment.problem.name;
        joint["seed"] = config.seed;
        joint["budget"] = config.budget;
        for (const auto& method : config.compare) {
            const RunResult r = run_into(method, experiment, config.seed, config.budget, out / method);
            std::vector<Index> safe_sizes;
            for (const auto& row : r.rows) {
                timing << row.iteration << ',' << method << ','
                       << row.t_bounds_ms + row.t_sets_ms + row.t_select_ms << ',' << row.t_bounds_ms << ','
                       << row.t_sets_ms << ',' << row.t_select_ms << ',' << row.t_ingest_ms << ',' << row.safe_size
                       << '\n';
                safe_sizes.push_back(row.safe_size);
            }
            auto summary = make_summary(r, experiment.problem, method, config.seed, config.budget);
            summary["safe_size_per_iteration"] = safe_sizes;
            joint["methods"][method] = summary;
            std::cout << method << ": final safe set " << r.final_state.safe.size() << ", true violations "
                      << r.total_true_violations << '\n';
        }
        write_json((out / "compare_summary.json").string(), joint);
        return int(kSuccess);
    });
}

int cmd_verify_bounds(const std::string& config_path, const CliOverrides& overrides) {
    return guarded([&] {
        const ExperimentConfig config = load_with_overrides(config_path, overrides);
        const auto& cc = config.concentration;
        const fs::path out(config.output);
        fs::create_directories(out);

        nlohmann::json report;
        report["self_normalized"] = nlohmann::json::array();
        report["supermartingale"] = nlohmann::json::array();
        bool pass = true;
        if (cc.deltas.empty() || cc.lengths.empty() || cc.noise.empty()) {
            std::cerr << "warning: empty concentration matrix, nothing to verify\n";
        }

        for (auto noise : cc.noise) {
            for (double delta : cc.deltas) {
                for (Index length : cc.lengths) {
                    ConcentrationConfig c;
                    c.length = length;
                    c.sigma = cc.sigma;
                    c.delta = delta;
                    c.trials = cc.trials;
                    c.noise = noise;
                    c.seed = config.seed;
                    c.bound_multiplier = cc.bound_multiplier;
                    const BoundCheck r = check_self_normalized_bound(c);
                    const bool ok = r.rate <= delta;
                    pass = pass && ok;
                    report["self_normalized"].push_back({{"noise", to_string(noise)}, {"delta", delta},
                                                         {"length", length}, {"trials", r.trials},
                                                         {"violations", r.violations}, {"rate", r.rate},
                                                         {"pass", ok}});
                    std::cout << (ok ? "PASS" : "FAIL") << " self-normalized noise=" << to_string(noise)
                              << " delta=" << delta << " n=" << length << " rate=" << r.rate << '\n';
                }
            }
            for (double eta : cc.etas) {
                ConcentrationConfig c;
                c.length = cc.martingale_length;
                c.sigma = cc.sigma;
                c.trials = cc.martingale_trials;
                c.noise = noise;
                c.seed = config.seed;
                const MartingaleCheck r = check_supermartingale(c, eta);
                const bool ok = r.overflowed == 0 && r.mean <= 1.0 + 3.0 * r.standard_error;
                pass = pass && ok;
                report["supermartingale"].push_back({{"noise", to_string(noise)}, {"eta", eta},
                                                     {"length", c.length}, {"trials", r.trials},
                                                     {"mean", r.mean}, {"standard_error", r.standard_error},
                                                     {"overflowed", r.overflowed}, {"pass", ok}});
                std::cout << (ok ? "PASS" : "FAIL") << " supermartingale noise=" << to_string(noise)
                          << " eta=" << eta << " mean=" << r.mean << " se=" << r.standard_error << '\n';
            }
        }
        report["pass"] = pass;
        write_json((out / "verify_bounds.json").string(), report);
        return pass ? int(kSuccess) : int(kAcceptanceFailure);
    });
}

}  // namespace colsafe::app
