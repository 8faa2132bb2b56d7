#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "schedsim/aco.hpp"
#include "schedsim/csa.hpp"
#include "schedsim/hybrid.hpp"
#include "schedsim/io.hpp"
#include "schedsim/model.hpp"

namespace schedsim::bench {

// Everything tunable about an experiment. Defaults are the desk-scale
// sweep the CLI runs when the config file leaves keys out.
struct ExperimentConfig {
    std::vector<std::string> algorithms{"rr", "aco", "hybrid"};
    std::vector<int> task_counts{50, 100, 200, 400};
    int num_resources = 10;
    std::array<double, 2> task_length_range{100.0, 1000.0};  // MI
    std::array<double, 2> mips_range{100.0, 1000.0};
    std::vector<std::int64_t> seeds = [] {
        std::vector<std::int64_t> s;
        for (int i = 0; i < 20; ++i) s.push_back(i);
        return s;
    }();
    aco::AcoParams aco;
    csa::CsaParams csa;
    int hybrid_csa_generations = 80;
};

void validate(const ExperimentConfig& config);

// JSON file with keys mirroring ExperimentConfig (aco.*, csa.*, hybrid.*
// nested). Unknown keys are rejected, value errors name the offending key.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig config_from_json_text(const std::string& text,
                                       const std::string& origin = "<config>");

// Uniform task lengths / resource rates, deterministic per seed.
Workload generate_workload(int n_tasks, std::array<double, 2> length_range,
                           std::uint64_t seed);
ResourcePool generate_pool(int num_resources, std::array<double, 2> mips_range,
                           std::uint64_t seed);

struct OracleResult {
    double makespan = 0.0;
    Assignment assignment;
};

// Exact optimum by enumerating every assignment of tasks to available
// resources. Refuses instances with more than 10^7 assignments. Ties break
// to the lexicographically smallest placement.
OracleResult brute_force_oracle(const Workload& workload, const ResourcePool& pool);

struct TspOracleResult {
    double length = 0.0;
    std::vector<int> tour;
};

// Exact shortest tour by enumerating all permutations from city 0.
TspOracleResult tsp_brute_force(const aco::TspInstance& inst);

struct ExperimentRecord {
    std::string algo;
    std::int64_t seed = 0;
    int n_tasks = 0;
    int n_resources = 0;
    int iteration = -1;  // -1 marks a whole-run summary row
    double best_makespan = 0.0;
    double mean_completion = 0.0;
    double wall_ms = 0.0;
};

// One run plus its per-iteration trace (empty for round-robin).
struct RunDetail {
    ExperimentRecord summary;
    std::vector<aco::CloudIteration> trace;
};

RunDetail run_single(const std::string& algo, const ExperimentConfig& config,
                     const Workload& workload, const ResourcePool& pool,
                     std::int64_t seed);

// Full (algorithm x task_count x seed) cross-product. Workloads and pools
// are derived from the seed, so every algorithm sees the same instances.
std::vector<RunDetail> run_experiment_detailed(const ExperimentConfig& config);

// Flat records sorted by (algo, n_tasks, seed, iteration); per-iteration
// rows are included when `trace` is set.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config,
                                             bool trace = false);

void write_records_csv(const std::vector<ExperimentRecord>& records,
                       const std::filesystem::path& path);
std::vector<ExperimentRecord> read_records_csv(const std::filesystem::path& path);

struct SummaryStat {
    std::string algo;
    int n_tasks = 0;
    int runs = 0;
    double mean_mean_completion = 0.0;
    double stddev_mean_completion = 0.0;
    double mean_best_makespan = 0.0;
    double stddev_best_makespan = 0.0;
};

// Per-(algo, n_tasks) statistics over summary rows.
std::vector<SummaryStat> summarize(const std::vector<ExperimentRecord>& records);

void write_summary_csv(const std::vector<SummaryStat>& stats,
                       const std::filesystem::path& path);

// Grouped-bar chart of mean completion time, one group per task count,
// one bar per algorithm, whiskers at +/- one stddev.
void write_plot_svg(const std::vector<ExperimentRecord>& records,
                    const std::filesystem::path& path);

enum class EmitFormat { csv, plot };

// csv: records CSV at `out`. plot: directory `out` with results.csv,
// summary.csv and plot.svg.
void summarize_and_emit(const std::vector<ExperimentRecord>& records,
                        const std::filesystem::path& out, EmitFormat format);

}  // namespace schedsim::bench
