#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "schedsim/aco.hpp"
#include "schedsim/rng.hpp"

using namespace schedsim;
using aco::AcoParams;
using aco::CloudSolution;
using aco::NodePheromoneState;

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

CloudSolution solution_for(const Workload& w, const ResourcePool& p,
                           std::vector<int> placement) {
    CloudSolution sol;
    sol.assignment.placement = std::move(placement);
    sol.metrics = evaluate(w, p, sol.assignment);
    return sol;
}

}  // namespace

TEST_CASE("resource probabilities: symmetric case splits evenly") {
    const NodePheromoneState state = NodePheromoneState::uniform(2, 1.0);
    const ResourcePool pool = uniform_pool(2, 100.0);
    AcoParams params;
    params.alpha = 1.0;
    params.beta = 1.0;
    const auto probs = aco::cloud_transition_probs(state, pool, params);
    CHECK(probs[0] == 0.5);
    CHECK(probs[1] == 0.5);
}

TEST_CASE("resource probabilities: pheromone ratio rule") {
    NodePheromoneState state = NodePheromoneState::uniform(2, 1.0);
    state.tau = {2.0, 1.0};
    const ResourcePool pool = uniform_pool(2, 100.0);
    AcoParams params;
    params.alpha = 1.0;
    params.beta = 0.0;
    const auto probs = aco::cloud_transition_probs(state, pool, params);
    CHECK(std::abs(probs[0] - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(probs[1] - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("resource probabilities: unavailable resources get exactly zero") {
    const NodePheromoneState state = NodePheromoneState::uniform(3, 1.0);
    ResourcePool pool = uniform_pool(3, 100.0);
    pool.resources[1].available = false;
    const auto probs = aco::cloud_transition_probs(state, pool, AcoParams{});
    CHECK(probs[1] == 0.0);
    CHECK(std::abs(probs[0] + probs[2] - 1.0) < 1e-9);

    for (auto& r : pool.resources) r.available = false;
    CHECK_THROWS_AS(aco::cloud_transition_probs(state, pool, AcoParams{}),
                    std::invalid_argument);
}

TEST_CASE("resource probabilities normalize on random states") {
    auto g = rng::substream(13, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = 2 + rng::uniform_int(g, 8);
        ResourcePool pool = uniform_pool(k, 100.0);
        NodePheromoneState state = NodePheromoneState::uniform(k, 1.0);
        for (double& t : state.tau) t = rng::uniform_range(g, 0.01, 10.0);
        bool any = false;
        for (auto& r : pool.resources) {
            r.available = rng::uniform01(g) < 0.7;
            any = any || r.available;
        }
        if (!any) pool.resources[0].available = true;

        AcoParams params;
        const auto probs = aco::cloud_transition_probs(state, pool, params);
        double sum = 0.0;
        for (int j = 0; j < k; ++j) {
            if (!pool.resources[j].available) CHECK(probs[j] == 0.0);
            sum += probs[j];
        }
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
}

TEST_CASE("assignment construction follows the distribution") {
    const Workload w = uniform_workload(5, 100.0);
    auto g = rng::substream(1, 0);

    // everything concentrated on resource 2
    NodePheromoneState state = NodePheromoneState::uniform(3, 1.0);
    state.tau = {0.0, 0.0, 12.5};
    const ResourcePool pool3 = uniform_pool(3, 100.0);
    const Assignment a =
        aco::cloud_construct_assignment(state, w, pool3, AcoParams{}, g);
    CHECK(a.placement == std::vector<int>{2, 2, 2, 2, 2});

    // single available resource
    ResourcePool gated = uniform_pool(3, 100.0);
    gated.resources[0].available = false;
    gated.resources[2].available = false;
    const NodePheromoneState s3 = NodePheromoneState::uniform(3, 1.0);
    const Assignment b =
        aco::cloud_construct_assignment(s3, w, gated, AcoParams{}, g);
    CHECK(b.placement == std::vector<int>{1, 1, 1, 1, 1});
}

TEST_CASE("assignment construction: binomial concentration at uniform tau") {
    const Workload w = uniform_workload(10000, 100.0);
    const ResourcePool pool = uniform_pool(2, 100.0);
    const NodePheromoneState state = NodePheromoneState::uniform(2, 1.0);
    auto g = rng::substream(8, 0);
    const Assignment a =
        aco::cloud_construct_assignment(state, w, pool, AcoParams{}, g);
    const auto zeros = std::count(a.placement.begin(), a.placement.end(), 0);
    CHECK(zeros > 5000 - 150);  // 3 sigma of Binomial(10000, 0.5)
    CHECK(zeros < 5000 + 150);
}

TEST_CASE("pheromone update: no-op limit and local step value") {
    const Workload w = uniform_workload(1, 200.0);
    const ResourcePool pool = uniform_pool(1, 100.0);
    const CloudSolution ant = solution_for(w, pool, {0});  // load = 2.0

    // rho = alpha_g = 0 leaves the state untouched (op-level limit)
    NodePheromoneState state = NodePheromoneState::uniform(1, 1.0);
    AcoParams params;
    params.rho = 0.0;
    params.alpha_g = 0.0;
    params.q = 1.0;
    aco::cloud_pheromone_update(state, {ant}, ant, params);
    CHECK(state.tau[0] == 1.0);

    // local step alone: tau <- 0.5*1 + 0.5*(q/load) = 0.75
    params.rho = 0.5;
    aco::cloud_pheromone_update(state, {ant}, ant, params);
    CHECK(std::abs(state.tau[0] - 0.75) < 1e-12);

    // with the global step on top: 0.9*0.75 + 0.1*(1/makespan)
    state.tau[0] = 1.0;
    params.alpha_g = 0.1;
    aco::cloud_pheromone_update(state, {ant}, ant, params);
    CHECK(std::abs(state.tau[0] - (0.9 * 0.75 + 0.1 * 0.5)) < 1e-12);
}

TEST_CASE("pheromone update: unused resources only evaporate") {
    const Workload w = uniform_workload(2, 100.0);
    const ResourcePool pool = uniform_pool(2, 100.0);
    const CloudSolution ant = solution_for(w, pool, {0, 0});

    NodePheromoneState state = NodePheromoneState::uniform(2, 1.0);
    AcoParams params;
    params.alpha_g = 0.1;
    aco::cloud_pheromone_update(state, {ant}, ant, params);
    // resource 1 untouched by the local step, evaporated by the global step
    CHECK(state.tau[1] == 0.9 * 1.0);
    CHECK(state.tau[0] > 0.0);
}

TEST_CASE("pheromone stays positive over many updates") {
    const Workload w = uniform_workload(4, 100.0);
    const ResourcePool pool = uniform_pool(3, 100.0);
    NodePheromoneState state = NodePheromoneState::uniform(3, 1.0);
    AcoParams params;
    for (int iter = 0; iter < 300; ++iter) {
        auto g = rng::substream(2, rng::stream::ants, iter, 0);
        CloudSolution ant;
        ant.assignment =
            aco::cloud_construct_assignment(state, w, pool, params, g);
        ant.metrics = evaluate(w, pool, ant.assignment);
        aco::cloud_pheromone_update(state, {ant}, ant, params);
    }
    for (double t : state.tau) CHECK(t > 0.0);
}

TEST_CASE("run_cloud_aco: trace contract, determinism, trivial instance") {
    Workload w;
    auto g = rng::substream(19, 0);
    for (int t = 0; t < 12; ++t) {
        w.tasks.push_back({t, rng::uniform_range(g, 100.0, 1000.0)});
    }
    ResourcePool pool;
    for (int r = 0; r < 4; ++r) {
        pool.resources.push_back({r, rng::uniform_range(g, 100.0, 1000.0), true});
    }
    AcoParams params;
    params.max_iterations = 25;

    const auto r1 = aco::run_cloud_aco(w, pool, params, 5);
    const auto r2 = aco::run_cloud_aco(w, pool, params, 5);
    REQUIRE(r1.trace.size() == 25);
    double best_seen = r1.trace.front().best_ever_makespan;
    for (std::size_t i = 0; i < r1.trace.size(); ++i) {
        CHECK(r1.trace[i].best_ever_makespan == r2.trace[i].best_ever_makespan);
        CHECK(r1.trace[i].raw_best_makespan == r2.trace[i].raw_best_makespan);
        CHECK(r1.trace[i].best_ever_makespan <= best_seen);
        best_seen = r1.trace[i].best_ever_makespan;
        // no hook: refined equals raw
        CHECK(r1.trace[i].refined_best_makespan == r1.trace[i].raw_best_makespan);
    }
    CHECK(r1.best_metrics.makespan == r1.trace.back().best_ever_makespan);
    CHECK(r1.best.placement == r2.best.placement);

    // single resource: the only possible makespan
    const ResourcePool one = uniform_pool(1, 100.0);
    const auto r3 = aco::run_cloud_aco(w, one, params, 5);
    double total = 0.0;
    for (const Task& t : w.tasks) total += t.length_mi / 100.0;
    CHECK(r3.best_metrics.makespan == doctest::Approx(total).epsilon(1e-12));
}
