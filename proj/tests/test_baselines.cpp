#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "schedsim/baselines.hpp"
#include "schedsim/bench.hpp"
#include "schedsim/rng.hpp"

using namespace schedsim;

namespace {

Workload uniform_workload(int n, double length) {
    Workload w;
    for (int t = 0; t < n; ++t) w.tasks.push_back({t, length});
    return w;
}

ResourcePool uniform_pool(int k, double mips) {
    ResourcePool p;
    for (int r = 0; r < k; ++r) p.resources.push_back({r, mips, true});
    return p;
}

}  // namespace

TEST_CASE("round_robin cycles through the available resources") {
    CHECK(baselines::round_robin(uniform_workload(5, 100.0), uniform_pool(2, 100.0))
              .placement == std::vector<int>{0, 1, 0, 1, 0});
    CHECK(baselines::round_robin(uniform_workload(3, 100.0), uniform_pool(1, 100.0))
              .placement == std::vector<int>{0, 0, 0});
    CHECK(baselines::round_robin(uniform_workload(4, 100.0), uniform_pool(4, 100.0))
              .placement == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("round_robin skips unavailable resources") {
    ResourcePool pool = uniform_pool(3, 100.0);
    pool.resources[1].available = false;
    CHECK(baselines::round_robin(uniform_workload(4, 100.0), pool).placement ==
          std::vector<int>{0, 2, 0, 2});

    for (auto& r : pool.resources) r.available = false;
    CHECK_THROWS_AS(baselines::round_robin(uniform_workload(4, 100.0), pool),
                    std::invalid_argument);
}

TEST_CASE("round_robin imbalance on homogeneous input is at most one task") {
    for (int n : {7, 16, 23}) {
        const Workload w = uniform_workload(n, 300.0);
        const ResourcePool pool = uniform_pool(5, 150.0);
        const ScheduleMetrics m =
            evaluate(w, pool, baselines::round_robin(w, pool));
        const double task_exec = 300.0 / 150.0;
        const double min_load =
            *std::min_element(m.resource_loads.begin(), m.resource_loads.end());
        CHECK(m.makespan - min_load <= task_exec + 1e-12);
    }
}

TEST_CASE("pure ACO is exactly cloud ACO without a hook") {
    auto g = rng::substream(9, 0);
    Workload w;
    for (int t = 0; t < 10; ++t) {
        w.tasks.push_back({t, rng::uniform_range(g, 100.0, 1000.0)});
    }
    ResourcePool pool;
    for (int r = 0; r < 3; ++r) {
        pool.resources.push_back({r, rng::uniform_range(g, 100.0, 1000.0), true});
    }
    aco::AcoParams params;
    params.max_iterations = 10;
    const auto a = baselines::pure_aco_schedule(w, pool, params, 21);
    const auto b = aco::run_cloud_aco(w, pool, params, 21, nullptr);
    CHECK(a.best.placement == b.best.placement);
    CHECK(a.best_metrics.makespan == b.best_metrics.makespan);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].best_ever_makespan == b.trace[i].best_ever_makespan);
    }
}

TEST_CASE("pure ACO nails a two-task split in nearly every seed") {
    const Workload w = uniform_workload(2, 100.0);
    const ResourcePool pool = uniform_pool(2, 100.0);
    const bench::OracleResult oracle = bench::brute_force_oracle(w, pool);

    aco::AcoParams params;
    params.max_iterations = 50;
    int hits = 0;
    for (int seed = 0; seed < 100; ++seed) {
        const auto run = baselines::pure_aco_schedule(w, pool, params, seed);
        if (run.best_metrics.makespan <= oracle.makespan + 1e-12) ++hits;
    }
    CHECK(hits >= 90);
}

TEST_CASE("single resource makes every scheduler equivalent") {
    const Workload w = uniform_workload(6, 120.0);
    const ResourcePool pool = uniform_pool(1, 60.0);
    aco::AcoParams params;
    params.max_iterations = 5;
    const auto rr = evaluate(w, pool, baselines::round_robin(w, pool));
    const auto run = baselines::pure_aco_schedule(w, pool, params, 0);
    CHECK(rr.makespan == run.best_metrics.makespan);
}
