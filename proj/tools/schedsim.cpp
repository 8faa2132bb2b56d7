// Command line front end: experiment runner, sweep driver, exact oracle,
// and a TSP demo mode for the tour-construction core.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "schedsim/bench.hpp"
#include "schedsim/io.hpp"

namespace {

int do_run(const std::string& config_path, const std::string& algo,
           long long seed, bool has_seed, bool trace, const std::string& out) {
    schedsim::bench::ExperimentConfig config =
        schedsim::bench::load_config(config_path);
    if (!algo.empty()) config.algorithms = {algo};
    if (has_seed) config.seeds = {seed};
    schedsim::bench::validate(config);
    const auto records = schedsim::bench::run_experiment(config, trace);
    schedsim::bench::write_records_csv(records, out);
    std::printf("wrote %zu records to %s\n", records.size(), out.c_str());
    return 0;
}

int do_sweep(const std::string& config_path, const std::string& out_dir) {
    const schedsim::bench::ExperimentConfig config =
        schedsim::bench::load_config(config_path);
    const auto records = schedsim::bench::run_experiment(config, false);
    schedsim::bench::summarize_and_emit(records, out_dir,
                                        schedsim::bench::EmitFormat::plot);
    std::printf("wrote results.csv, summary.csv, plot.svg to %s\n",
                out_dir.c_str());
    return 0;
}

int do_oracle(const std::string& workload_path, const std::string& pool_path) {
    const schedsim::Workload workload =
        schedsim::io::load_workload_csv(workload_path);
    const schedsim::ResourcePool pool = schedsim::io::load_pool_csv(pool_path);
    schedsim::bench::OracleResult result;
    try {
        result = schedsim::bench::brute_force_oracle(workload, pool);
    } catch (const std::invalid_argument& e) {
        throw schedsim::io::ConfigError(e.what());
    }
    const schedsim::ScheduleMetrics metrics =
        schedsim::evaluate(workload, pool, result.assignment);
    std::printf("optimal_makespan %.17g\n", result.makespan);
    std::printf("mean_completion %.17g\n", metrics.mean_completion);
    std::printf("placement");
    for (int r : result.assignment.placement) std::printf(" %d", r);
    std::printf("\n");
    return 0;
}

int do_tsp(const std::string& instance_path, const std::string& config_path) {
    const schedsim::aco::TspInstance inst =
        schedsim::io::load_tsp_csv(instance_path);
    const schedsim::bench::ExperimentConfig config =
        schedsim::bench::load_config(config_path);
    const std::uint64_t seed = static_cast<std::uint64_t>(config.seeds.front());
    const auto result = schedsim::aco::run_tsp_aco(inst, config.aco, seed);
    std::printf("best_length %.17g\n", result.best.tour_length);
    std::printf("tour");
    for (int city : result.best.tour) std::printf(" %d", city);
    std::printf("\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cloud task-scheduling simulator and benchmark harness"};
    app.require_subcommand(1);

    std::string config_path, algo, out, workload_path, pool_path, instance_path;
    long long seed = 0;
    bool trace = false;

    CLI::App* run = app.add_subcommand("run", "run experiments from a config");
    run->add_option("--config", config_path, "JSON config file")->required();
    run->add_option("--algo", algo, "restrict to one algorithm")
        ->check(CLI::IsMember({"rr", "aco", "hybrid"}));
    CLI::Option* seed_opt =
        run->add_option("--seed", seed, "restrict to one seed");
    run->add_flag("--trace", trace, "emit per-iteration rows");
    run->add_option("--out", out, "output CSV path")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "full sweep with summary and plot");
    sweep->add_option("--config", config_path, "JSON config file")->required();
    sweep->add_option("--out", out, "output directory")->required();

    CLI::App* oracle =
        app.add_subcommand("oracle", "exact optimum for a small instance");
    oracle->add_option("--workload", workload_path, "workload CSV")->required();
    oracle->add_option("--pool", pool_path, "resource pool CSV")->required();

    CLI::App* tsp = app.add_subcommand("tsp", "tour construction demo");
    tsp->add_option("--instance", instance_path, "distance CSV")->required();
    tsp->add_option("--config", config_path, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            return do_run(config_path, algo, seed, seed_opt->count() > 0, trace,
                          out);
        }
        if (sweep->parsed()) return do_sweep(config_path, out);
        if (oracle->parsed()) return do_oracle(workload_path, pool_path);
        if (tsp->parsed()) return do_tsp(instance_path, config_path);
    } catch (const schedsim::io::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const schedsim::io::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
