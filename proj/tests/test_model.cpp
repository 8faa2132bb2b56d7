#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "schedsim/model.hpp"
#include "schedsim/rng.hpp"

using namespace schedsim;

namespace {

Workload make_workload(std::initializer_list<double> lengths) {
    Workload w;
    int id = 0;
    for (double l : lengths) w.tasks.push_back({id++, l});
    return w;
}

ResourcePool make_pool(std::initializer_list<double> mips) {
    ResourcePool p;
    int id = 0;
    for (double m : mips) p.resources.push_back({id++, m, true});
    return p;
}

}  // namespace

TEST_CASE("execution_time is length over rate") {
    CHECK(execution_time({0, 1000.0}, {0, 1000.0, true}) == 1.0);
    CHECK(execution_time({0, 1000.0}, {0, 500.0, true}) == 2.0);
    CHECK_THROWS_AS(execution_time({0, 0.0}, {0, 500.0, true}),
                    std::invalid_argument);
    CHECK_THROWS_AS(execution_time({0, 100.0}, {0, 0.0, true}),
                    std::invalid_argument);
}

TEST_CASE("evaluate: three tasks stacked on one resource") {
    const Workload w = make_workload({100.0, 200.0, 300.0});
    const ResourcePool p = make_pool({500.0});
    const Assignment a{{0, 0, 0}};
    const ScheduleMetrics m = evaluate(w, p, a);
    CHECK(m.makespan == doctest::Approx(1.2).epsilon(1e-12));
    // completions 0.2, 0.6, 1.2 back to back
    CHECK(m.mean_completion == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(m.resource_loads.size() == 1);
}

TEST_CASE("evaluate: loads split across two resources") {
    const Workload w = make_workload({100.0, 200.0, 300.0});
    const ResourcePool p = make_pool({100.0, 300.0});
    const Assignment a{{0, 0, 1}};
    const ScheduleMetrics m = evaluate(w, p, a);
    CHECK(m.resource_loads[0] == 3.0);
    CHECK(m.resource_loads[1] == 1.0);
    CHECK(m.makespan == 3.0);
    // completions: task0 1.0, task1 3.0, task2 1.0
    CHECK(m.mean_completion == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("evaluate: single task degenerate case") {
    const Workload w = make_workload({750.0});
    const ResourcePool p = make_pool({250.0});
    const ScheduleMetrics m = evaluate(w, p, Assignment{{0}});
    const double exec = execution_time(w.tasks[0], p.resources[0]);
    CHECK(m.makespan == exec);
    CHECK(m.mean_completion == exec);
}

TEST_CASE("evaluate rejects invalid placements") {
    const Workload w = make_workload({100.0, 100.0});
    ResourcePool p = make_pool({100.0, 100.0});
    CHECK_THROWS_AS(evaluate(w, p, Assignment{{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(w, p, Assignment{{0}}), std::invalid_argument);
    p.resources[1].available = false;
    CHECK_THROWS_AS(evaluate(w, p, Assignment{{0, 1}}), std::invalid_argument);
}

TEST_CASE("affinity is the reciprocal of makespan") {
    ScheduleMetrics m;
    m.makespan = 2.0;
    CHECK(affinity(m) == 0.5);
    m.makespan = 1.0;
    CHECK(affinity(m) == 1.0);
}

TEST_CASE("affinity ordering inverts makespan ordering") {
    auto g = rng::substream(17, 0);
    for (int trial = 0; trial < 100; ++trial) {
        ScheduleMetrics a, b;
        a.makespan = rng::uniform_range(g, 0.1, 10.0);
        b.makespan = rng::uniform_range(g, 0.1, 10.0);
        if (a.makespan < b.makespan) {
            CHECK(affinity(a) > affinity(b));
        } else if (a.makespan > b.makespan) {
            CHECK(affinity(a) < affinity(b));
        }
    }
}

TEST_CASE("load conservation and makespan = max load on random instances") {
    auto g = rng::substream(23, 0);
    for (int trial = 0; trial < 50; ++trial) {
        Workload w;
        const int n = 1 + rng::uniform_int(g, 30);
        for (int t = 0; t < n; ++t) {
            w.tasks.push_back({t, rng::uniform_range(g, 10.0, 1000.0)});
        }
        ResourcePool p;
        const int k = 1 + rng::uniform_int(g, 6);
        for (int r = 0; r < k; ++r) {
            p.resources.push_back({r, rng::uniform_range(g, 100.0, 1000.0), true});
        }
        Assignment a;
        for (int t = 0; t < n; ++t) a.placement.push_back(rng::uniform_int(g, k));

        const ScheduleMetrics m = evaluate(w, p, a);
        CHECK(m.makespan ==
              *std::max_element(m.resource_loads.begin(), m.resource_loads.end()));

        double direct = 0.0;
        for (int t = 0; t < n; ++t) {
            direct += execution_time(w.tasks[t], p.resources[a.placement[t]]);
        }
        const double summed =
            std::accumulate(m.resource_loads.begin(), m.resource_loads.end(), 0.0);
        CHECK(summed == doctest::Approx(direct).epsilon(1e-9));
        CHECK(m.makespan >= m.mean_completion);
        CHECK(m.mean_completion > 0.0);
    }
}

TEST_CASE("validation catches malformed inputs") {
    CHECK_THROWS_AS(validate(Workload{}), std::invalid_argument);
    Workload bad_ids;
    bad_ids.tasks = {{1, 100.0}};
    CHECK_THROWS_AS(validate(bad_ids), std::invalid_argument);

    CHECK_THROWS_AS(validate(ResourcePool{}), std::invalid_argument);
    ResourcePool none_available;
    none_available.resources = {{0, 100.0, false}};
    CHECK_THROWS_AS(validate(none_available), std::invalid_argument);

    ResourcePool p = make_pool({100.0});
    CHECK(p.available_ids() == std::vector<int>{0});
    p.resources.push_back({1, 100.0, false});
    p.resources.push_back({2, 100.0, true});
    CHECK(p.available_ids() == std::vector<int>{0, 2});
}
