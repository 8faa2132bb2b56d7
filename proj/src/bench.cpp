#include "schedsim/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "schedsim/baselines.hpp"
#include "schedsim/rng.hpp"

namespace schedsim::bench {

using nlohmann::json;

void validate(const ExperimentConfig& config) {
    if (config.algorithms.empty()) {
        throw io::ConfigError("config: algorithms must not be empty");
    }
    for (const std::string& algo : config.algorithms) {
        if (algo != "rr" && algo != "aco" && algo != "hybrid") {
            throw io::ConfigError("config: unknown algorithm '" + algo + "'");
        }
    }
    if (config.task_counts.empty()) {
        throw io::ConfigError("config: task_counts must not be empty");
    }
    for (int n : config.task_counts) {
        if (n < 1) throw io::ConfigError("config: task_counts entries must be >= 1");
    }
    if (config.num_resources < 1) {
        throw io::ConfigError("config: num_resources must be >= 1");
    }
    for (const auto& [name, range] :
         {std::pair{"task_length_range", config.task_length_range},
          std::pair{"mips_range", config.mips_range}}) {
        if (!(range[0] > 0.0) || !(range[1] >= range[0])) {
            throw io::ConfigError(std::string("config: ") + name +
                                  " must satisfy 0 < min <= max");
        }
    }
    if (config.seeds.empty()) {
        throw io::ConfigError("config: seeds must not be empty");
    }
    try {
        aco::validate(config.aco);
        csa::validate(config.csa);
    } catch (const std::invalid_argument& e) {
        throw io::ConfigError(std::string("config: ") + e.what());
    }
    if (config.hybrid_csa_generations < 0) {
        throw io::ConfigError("config: hybrid.csa_generations_per_iteration must be >= 0");
    }
}

namespace {

// Reject keys the schema does not know; typos in configs should fail loud.
void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& known) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key)) {
            throw io::ConfigError("config: unknown key '" + where + key + "'");
        }
    }
}

template <typename T>
void read_key(const json& obj, const std::string& where, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw io::ConfigError("config: bad value for '" + where + key + "': " + e.what());
    }
}

void read_range(const json& obj, const std::string& where, const char* key,
                std::array<double, 2>& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2) {
        throw io::ConfigError("config: '" + where + key + "' must be [min, max]");
    }
    try {
        out = {v.at(0).get<double>(), v.at(1).get<double>()};
    } catch (const json::exception& e) {
        throw io::ConfigError("config: bad value for '" + where + key + "': " + e.what());
    }
}

ExperimentConfig config_from_json(const json& root) {
    ExperimentConfig config;
    check_keys(root, "",
               {"algorithms", "task_counts", "num_resources", "task_length_range",
                "mips_range", "seeds", "aco", "csa", "hybrid"});
    read_key(root, "", "algorithms", config.algorithms);
    read_key(root, "", "task_counts", config.task_counts);
    read_key(root, "", "num_resources", config.num_resources);
    read_range(root, "", "task_length_range", config.task_length_range);
    read_range(root, "", "mips_range", config.mips_range);
    read_key(root, "", "seeds", config.seeds);

    if (root.contains("aco")) {
        const json& a = root.at("aco");
        check_keys(a, "aco.",
                   {"alpha", "beta", "rho", "alpha_g", "q", "tau0", "num_ants",
                    "max_iterations"});
        read_key(a, "aco.", "alpha", config.aco.alpha);
        read_key(a, "aco.", "beta", config.aco.beta);
        read_key(a, "aco.", "rho", config.aco.rho);
        read_key(a, "aco.", "alpha_g", config.aco.alpha_g);
        read_key(a, "aco.", "q", config.aco.q);
        read_key(a, "aco.", "tau0", config.aco.tau0);
        read_key(a, "aco.", "num_ants", config.aco.num_ants);
        read_key(a, "aco.", "max_iterations", config.aco.max_iterations);
    }
    if (root.contains("csa")) {
        const json& c = root.at("csa");
        check_keys(c, "csa.",
                   {"pop_size", "clone_factor", "mutation_rate", "t_beta",
                    "replace_count", "generations"});
        read_key(c, "csa.", "pop_size", config.csa.pop_size);
        read_key(c, "csa.", "clone_factor", config.csa.clone_factor);
        read_key(c, "csa.", "mutation_rate", config.csa.mutation_rate);
        read_key(c, "csa.", "t_beta", config.csa.t_beta);
        read_key(c, "csa.", "replace_count", config.csa.replace_count);
        read_key(c, "csa.", "generations", config.csa.generations);
    }
    if (root.contains("hybrid")) {
        const json& h = root.at("hybrid");
        check_keys(h, "hybrid.", {"csa_generations_per_iteration"});
        read_key(h, "hybrid.", "csa_generations_per_iteration",
                 config.hybrid_csa_generations);
    }

    validate(config);
    return config;
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text,
                                       const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw io::ConfigError(origin + ": " + e.what());
    }
    if (!root.is_object()) {
        throw io::ConfigError(origin + ": config must be a JSON object");
    }
    return config_from_json(root);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw io::IoError("cannot open " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return config_from_json_text(buffer.str(), path.string());
}

Workload generate_workload(int n_tasks, std::array<double, 2> length_range,
                           std::uint64_t seed) {
    if (n_tasks < 1) throw io::ConfigError("generate_workload: n_tasks must be >= 1");
    if (!(length_range[0] > 0.0) || !(length_range[1] >= length_range[0])) {
        throw io::ConfigError("generate_workload: bad length range");
    }
    std::mt19937_64 gen(seed);
    Workload workload;
    workload.tasks.reserve(n_tasks);
    for (int t = 0; t < n_tasks; ++t) {
        workload.tasks.push_back(
            {t, rng::uniform_range(gen, length_range[0], length_range[1])});
    }
    return workload;
}

ResourcePool generate_pool(int num_resources, std::array<double, 2> mips_range,
                           std::uint64_t seed) {
    if (num_resources < 1) {
        throw io::ConfigError("generate_pool: num_resources must be >= 1");
    }
    if (!(mips_range[0] > 0.0) || !(mips_range[1] >= mips_range[0])) {
        throw io::ConfigError("generate_pool: bad mips range");
    }
    std::mt19937_64 gen(seed);
    ResourcePool pool;
    pool.resources.reserve(num_resources);
    for (int r = 0; r < num_resources; ++r) {
        pool.resources.push_back(
            {r, rng::uniform_range(gen, mips_range[0], mips_range[1]), true});
    }
    return pool;
}

OracleResult brute_force_oracle(const Workload& workload, const ResourcePool& pool) {
    schedsim::validate(workload);
    schedsim::validate(pool);

    const std::vector<int> available = pool.available_ids();
    const std::size_t k = available.size();
    const std::size_t n = workload.tasks.size();
    if (static_cast<double>(n) * std::log(static_cast<double>(k)) > std::log(1e7)) {
        throw std::invalid_argument("brute_force_oracle: more than 1e7 assignments");
    }

    // exec[t][a]: seconds for task t on the a-th available resource.
    std::vector<std::vector<double>> exec(n, std::vector<double>(k));
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t a = 0; a < k; ++a) {
            exec[t][a] = execution_time(workload.tasks[t],
                                        pool.resources[available[a]]);
        }
    }

    std::vector<std::size_t> digits(n, 0);
    std::vector<double> loads(k);
    OracleResult best;
    best.makespan = std::numeric_limits<double>::infinity();

    // Odometer over placements in lexicographic order; the first strict
    // improvement wins, so ties resolve to the smallest placement.
    while (true) {
        std::fill(loads.begin(), loads.end(), 0.0);
        for (std::size_t t = 0; t < n; ++t) loads[digits[t]] += exec[t][digits[t]];
        const double makespan = *std::max_element(loads.begin(), loads.end());
        if (makespan < best.makespan) {
            best.makespan = makespan;
            best.assignment.placement.resize(n);
            for (std::size_t t = 0; t < n; ++t) {
                best.assignment.placement[t] = available[digits[t]];
            }
        }

        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < k) break;
            digits[pos] = 0;
            if (pos == 0) return best;
        }
    }
}

TspOracleResult tsp_brute_force(const aco::TspInstance& inst) {
    aco::validate(inst);
    if (inst.n > 10) {
        throw std::invalid_argument("tsp_brute_force: instance too large");
    }

    std::vector<int> rest(inst.n - 1);
    for (int i = 0; i < inst.n - 1; ++i) rest[i] = i + 1;

    TspOracleResult best;
    best.length = std::numeric_limits<double>::infinity();
    do {
        double length = inst.dist[0][rest[0]];
        for (std::size_t s = 0; s + 1 < rest.size(); ++s) {
            length += inst.dist[rest[s]][rest[s + 1]];
        }
        length += inst.dist[rest.back()][0];
        if (length < best.length) {
            best.length = length;
            best.tour.assign(1, 0);
            best.tour.insert(best.tour.end(), rest.begin(), rest.end());
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    const auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(end - start).count();
}

}  // namespace

RunDetail run_single(const std::string& algo, const ExperimentConfig& config,
                     const Workload& workload, const ResourcePool& pool,
                     std::int64_t seed) {
    RunDetail detail;
    detail.summary.algo = algo;
    detail.summary.seed = seed;
    detail.summary.n_tasks = static_cast<int>(workload.tasks.size());
    detail.summary.n_resources = static_cast<int>(pool.resources.size());
    detail.summary.iteration = -1;

    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t master = static_cast<std::uint64_t>(seed);
    if (algo == "rr") {
        const Assignment assignment = baselines::round_robin(workload, pool);
        const ScheduleMetrics metrics = evaluate(workload, pool, assignment);
        detail.summary.best_makespan = metrics.makespan;
        detail.summary.mean_completion = metrics.mean_completion;
    } else if (algo == "aco") {
        const auto result =
            baselines::pure_aco_schedule(workload, pool, config.aco, master);
        detail.summary.best_makespan = result.best_metrics.makespan;
        detail.summary.mean_completion = result.best_metrics.mean_completion;
        detail.trace = result.trace;
    } else if (algo == "hybrid") {
        hybrid::HybridParams params{config.aco, config.csa,
                                    config.hybrid_csa_generations};
        const auto result = hybrid::run_hybrid(workload, pool, params, master);
        detail.summary.best_makespan = result.best_metrics.makespan;
        detail.summary.mean_completion = result.best_metrics.mean_completion;
        detail.trace = result.trace;
    } else {
        throw io::ConfigError("run_single: unknown algorithm '" + algo + "'");
    }
    detail.summary.wall_ms = elapsed_ms(start);
    return detail;
}

std::vector<RunDetail> run_experiment_detailed(const ExperimentConfig& config) {
    validate(config);
    std::vector<RunDetail> details;
    details.reserve(config.algorithms.size() * config.task_counts.size() *
                    config.seeds.size());
    for (const std::string& algo : config.algorithms) {
        for (int n_tasks : config.task_counts) {
            for (std::int64_t seed : config.seeds) {
                const std::uint64_t s = static_cast<std::uint64_t>(seed);
                const Workload workload = generate_workload(
                    n_tasks, config.task_length_range,
                    rng::mix(s, rng::stream::workload, n_tasks));
                const ResourcePool pool =
                    generate_pool(config.num_resources, config.mips_range,
                                  rng::mix(s, rng::stream::pool));
                details.push_back(run_single(algo, config, workload, pool, seed));
            }
        }
    }
    return details;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config,
                                             bool trace) {
    std::vector<ExperimentRecord> records;
    for (const RunDetail& detail : run_experiment_detailed(config)) {
        records.push_back(detail.summary);
        if (trace) {
            for (std::size_t i = 0; i < detail.trace.size(); ++i) {
                ExperimentRecord row = detail.summary;
                row.iteration = static_cast<int>(i);
                row.best_makespan = detail.trace[i].best_ever_makespan;
                row.mean_completion = detail.trace[i].best_ever_mean_completion;
                row.wall_ms = 0.0;
                records.push_back(row);
            }
        }
    }
    std::sort(records.begin(), records.end(),
              [](const ExperimentRecord& a, const ExperimentRecord& b) {
                  return std::tie(a.algo, a.n_tasks, a.seed, a.iteration) <
                         std::tie(b.algo, b.n_tasks, b.seed, b.iteration);
              });
    return records;
}

namespace {

// Shortest representation that parses back to the identical double.
std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

double parse_double_field(const std::string& text, const std::string& where) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw io::ConfigError(where + ": bad number '" + text + "'");
    }
    return value;
}

std::int64_t parse_int_field(const std::string& text, const std::string& where) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw io::ConfigError(where + ": bad integer '" + text + "'");
    }
    return value;
}

constexpr const char* kRecordHeader =
    "algo,seed,n_tasks,n_resources,iteration,best_makespan,mean_completion,wall_ms";

}  // namespace

void write_records_csv(const std::vector<ExperimentRecord>& records,
                       const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw io::IoError("cannot write " + path.string());
    out << kRecordHeader << '\n';
    for (const ExperimentRecord& r : records) {
        out << r.algo << ',' << r.seed << ',' << r.n_tasks << ',' << r.n_resources
            << ',' << r.iteration << ',' << format_double(r.best_makespan) << ','
            << format_double(r.mean_completion) << ',' << format_double(r.wall_ms)
            << '\n';
    }
    if (!out) throw io::IoError("write failed for " + path.string());
}

std::vector<ExperimentRecord> read_records_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io::IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kRecordHeader) {
        throw io::ConfigError(path.string() + ": bad records header");
    }
    std::vector<ExperimentRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::vector<std::string> fields;
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 8) {
            throw io::ConfigError(path.string() + ":" + std::to_string(line_no) +
                                  ": expected 8 fields");
        }
        const std::string where = path.string() + ":" + std::to_string(line_no);
        ExperimentRecord r;
        r.algo = fields[0];
        r.seed = parse_int_field(fields[1], where);
        r.n_tasks = static_cast<int>(parse_int_field(fields[2], where));
        r.n_resources = static_cast<int>(parse_int_field(fields[3], where));
        r.iteration = static_cast<int>(parse_int_field(fields[4], where));
        r.best_makespan = parse_double_field(fields[5], where);
        r.mean_completion = parse_double_field(fields[6], where);
        r.wall_ms = parse_double_field(fields[7], where);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<SummaryStat> summarize(const std::vector<ExperimentRecord>& records) {
    struct Acc {
        int runs = 0;
        double sum_mc = 0, sum_mc2 = 0, sum_mk = 0, sum_mk2 = 0;
    };
    std::map<std::pair<std::string, int>, Acc> groups;
    for (const ExperimentRecord& r : records) {
        if (r.iteration != -1) continue;
        Acc& acc = groups[{r.algo, r.n_tasks}];
        ++acc.runs;
        acc.sum_mc += r.mean_completion;
        acc.sum_mc2 += r.mean_completion * r.mean_completion;
        acc.sum_mk += r.best_makespan;
        acc.sum_mk2 += r.best_makespan * r.best_makespan;
    }
    std::vector<SummaryStat> stats;
    for (const auto& [key, acc] : groups) {
        SummaryStat s;
        s.algo = key.first;
        s.n_tasks = key.second;
        s.runs = acc.runs;
        const double n = static_cast<double>(acc.runs);
        s.mean_mean_completion = acc.sum_mc / n;
        s.mean_best_makespan = acc.sum_mk / n;
        if (acc.runs > 1) {
            // Sample stddev; clamp tiny negative rounding away.
            const double var_mc =
                std::max(0.0, (acc.sum_mc2 - n * s.mean_mean_completion *
                                                 s.mean_mean_completion) /
                                  (n - 1.0));
            const double var_mk =
                std::max(0.0, (acc.sum_mk2 - n * s.mean_best_makespan *
                                                 s.mean_best_makespan) /
                                  (n - 1.0));
            s.stddev_mean_completion = std::sqrt(var_mc);
            s.stddev_best_makespan = std::sqrt(var_mk);
        }
        stats.push_back(std::move(s));
    }
    return stats;
}

void write_summary_csv(const std::vector<SummaryStat>& stats,
                       const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw io::IoError("cannot write " + path.string());
    out << "algo,n_tasks,runs,mean_mean_completion,stddev_mean_completion,"
           "mean_best_makespan,stddev_best_makespan\n";
    for (const SummaryStat& s : stats) {
        out << s.algo << ',' << s.n_tasks << ',' << s.runs << ','
            << format_double(s.mean_mean_completion) << ','
            << format_double(s.stddev_mean_completion) << ','
            << format_double(s.mean_best_makespan) << ','
            << format_double(s.stddev_best_makespan) << '\n';
    }
    if (!out) throw io::IoError("write failed for " + path.string());
}

void summarize_and_emit(const std::vector<ExperimentRecord>& records,
                        const std::filesystem::path& out, EmitFormat format) {
    if (records.empty()) {
        throw std::invalid_argument("summarize_and_emit: no records");
    }
    if (format == EmitFormat::csv) {
        write_records_csv(records, out);
        return;
    }
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) throw io::IoError("cannot create directory " + out.string());
    write_records_csv(records, out / "results.csv");
    write_summary_csv(summarize(records), out / "summary.csv");
    write_plot_svg(records, out / "plot.svg");
}

}  // namespace schedsim::bench
