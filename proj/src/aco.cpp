#include "schedsim/aco.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "schedsim/rng.hpp"

namespace schedsim::aco {

void validate(const AcoParams& params) {
    if (!(params.alpha >= 0.0)) throw std::invalid_argument("aco: alpha must be >= 0");
    if (!(params.beta >= 0.0)) throw std::invalid_argument("aco: beta must be >= 0");
    if (!(params.rho > 0.0 && params.rho < 1.0)) {
        throw std::invalid_argument("aco: rho must be in (0,1)");
    }
    if (!(params.alpha_g > 0.0 && params.alpha_g < 1.0)) {
        throw std::invalid_argument("aco: alpha_g must be in (0,1)");
    }
    if (!(params.q > 0.0)) throw std::invalid_argument("aco: q must be > 0");
    if (!(params.tau0 > 0.0)) throw std::invalid_argument("aco: tau0 must be > 0");
    if (params.num_ants < 1) throw std::invalid_argument("aco: num_ants must be >= 1");
    if (params.max_iterations < 1) {
        throw std::invalid_argument("aco: max_iterations must be >= 1");
    }
}

void validate(const TspInstance& inst) {
    if (inst.n < 2) throw std::invalid_argument("tsp: need at least 2 cities");
    if (inst.dist.size() != static_cast<std::size_t>(inst.n)) {
        throw std::invalid_argument("tsp: distance matrix must be n x n");
    }
    for (int i = 0; i < inst.n; ++i) {
        if (inst.dist[i].size() != static_cast<std::size_t>(inst.n)) {
            throw std::invalid_argument("tsp: distance matrix must be n x n");
        }
        if (inst.dist[i][i] != 0.0) {
            throw std::invalid_argument("tsp: diagonal distances must be 0");
        }
        for (int j = 0; j < inst.n; ++j) {
            if (i != j && !(inst.dist[i][j] > 0.0)) {
                throw std::invalid_argument("tsp: off-diagonal distances must be > 0");
            }
            if (inst.dist[i][j] != inst.dist[j][i]) {
                throw std::invalid_argument("tsp: distance matrix must be symmetric");
            }
        }
    }
}

EdgePheromoneState EdgePheromoneState::uniform(int n, double tau0) {
    EdgePheromoneState state;
    state.tau.assign(n, std::vector<double>(n, tau0));
    return state;
}

NodePheromoneState NodePheromoneState::uniform(std::size_t num_resources,
                                               double tau0) {
    NodePheromoneState state;
    state.tau.assign(num_resources, tau0);
    state.tau0_per_node.assign(num_resources, tau0);
    return state;
}

namespace {

// Normalize weights in place into a probability distribution.
void normalize(std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) {
        throw std::runtime_error("transition probabilities: zero total weight");
    }
    for (double& w : weights) w /= total;
}

}  // namespace

std::vector<double> tsp_transition_probs(const EdgePheromoneState& state,
                                         const TspInstance& inst,
                                         const TourState& tour,
                                         const AcoParams& params) {
    const int i = tour.current_city;
    if (i < 0 || i >= inst.n) {
        throw std::invalid_argument("tsp_transition_probs: invalid current city");
    }
    std::vector<double> probs(inst.n, 0.0);
    bool any_unvisited = false;
    for (int j = 0; j < inst.n; ++j) {
        if (tour.visited[j]) continue;
        any_unvisited = true;
        const double eta = 1.0 / inst.dist[i][j];
        probs[j] = std::pow(state.tau[i][j], params.alpha) * std::pow(eta, params.beta);
    }
    if (!any_unvisited) {
        throw std::invalid_argument("tsp_transition_probs: all cities visited");
    }
    normalize(probs);
    return probs;
}

TourState tsp_construct_tour(const EdgePheromoneState& state,
                             const TspInstance& inst, const AcoParams& params,
                             std::mt19937_64& rng) {
    TourState tour;
    tour.visited.assign(inst.n, 0);
    tour.tour.reserve(inst.n);

    const int start = rng::uniform_int(rng, inst.n);
    tour.current_city = start;
    tour.visited[start] = 1;
    tour.tour.push_back(start);

    for (int step = 1; step < inst.n; ++step) {
        const std::vector<double> probs = tsp_transition_probs(state, inst, tour, params);
        const int next = static_cast<int>(rng::sample_discrete(probs, rng));
        tour.partial_length += inst.dist[tour.current_city][next];
        tour.current_city = next;
        tour.visited[next] = 1;
        tour.tour.push_back(next);
    }

    tour.tour_length = tour.partial_length + inst.dist[tour.current_city][start];
    tour.complete = true;
    return tour;
}

void tsp_local_update(EdgePheromoneState& state, int i, int j, double delta,
                      const AcoParams& params) {
    if (i == j) throw std::invalid_argument("tsp_local_update: i == j");
    state.tau[i][j] = (1.0 - params.rho) * state.tau[i][j] + params.rho * delta;
}

void tsp_deposit_tour(EdgePheromoneState& state, const TourState& tour,
                      const TspInstance& inst, const AcoParams& params) {
    if (!tour.complete) throw std::invalid_argument("tsp_deposit_tour: incomplete tour");
    const int n = static_cast<int>(tour.tour.size());
    double walked = 0.0;
    for (int s = 0; s < n; ++s) {
        const int i = tour.tour[s];
        const int j = tour.tour[(s + 1) % n];
        walked += inst.dist[i][j];
        const double delta = params.q / walked;
        tsp_local_update(state, i, j, delta, params);
        tsp_local_update(state, j, i, delta, params);
    }
}

std::pair<std::size_t, double> best_solution(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("best_solution: empty sequence");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[best]) best = i;
    }
    return {best, values[best]};
}

void tsp_global_update(EdgePheromoneState& state, const TourState& best_tour,
                       const AcoParams& params) {
    if (!best_tour.complete) {
        throw std::invalid_argument("tsp_global_update: incomplete tour");
    }
    const int n = static_cast<int>(state.tau.size());
    std::vector<std::vector<char>> on_tour(n, std::vector<char>(n, 0));
    const int len = static_cast<int>(best_tour.tour.size());
    for (int s = 0; s < len; ++s) {
        const int i = best_tour.tour[s];
        const int j = best_tour.tour[(s + 1) % len];
        on_tour[i][j] = on_tour[j][i] = 1;
    }
    const double deposit = 1.0 / best_tour.tour_length;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double delta = on_tour[i][j] ? deposit : 0.0;
            state.tau[i][j] =
                (1.0 - params.alpha_g) * state.tau[i][j] + params.alpha_g * delta;
        }
    }
}

TspRunResult run_tsp_aco(const TspInstance& inst, const AcoParams& params,
                         std::uint64_t seed) {
    validate(params);
    validate(inst);

    EdgePheromoneState state = EdgePheromoneState::uniform(inst.n, params.tau0);
    TspRunResult result;
    result.trace.reserve(params.max_iterations);
    double best_length = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < params.max_iterations; ++iter) {
        std::vector<TourState> tours;
        tours.reserve(params.num_ants);
        std::vector<double> lengths(params.num_ants);
        for (int ant = 0; ant < params.num_ants; ++ant) {
            auto ant_rng = rng::substream(seed, rng::stream::ants, iter, ant);
            tours.push_back(tsp_construct_tour(state, inst, params, ant_rng));
            lengths[ant] = tours.back().tour_length;
        }

        // Local deposits, ants in ascending index, edges in traversal order.
        for (const TourState& tour : tours) {
            tsp_deposit_tour(state, tour, inst, params);
        }

        const auto [best_ant, iter_best] = best_solution(lengths);
        if (iter_best < best_length) {
            best_length = iter_best;
            result.best = tours[best_ant];
        }

        tsp_global_update(state, result.best, params);
        result.trace.push_back(best_length);
    }
    return result;
}

std::vector<double> cloud_transition_probs(const NodePheromoneState& state,
                                           const ResourcePool& pool,
                                           const AcoParams& params) {
    if (state.tau.size() != pool.resources.size()) {
        throw std::invalid_argument("cloud_transition_probs: state/pool size mismatch");
    }
    std::vector<double> probs(pool.resources.size(), 0.0);
    bool any_available = false;
    for (std::size_t j = 0; j < pool.resources.size(); ++j) {
        if (!pool.resources[j].available) continue;
        any_available = true;
        probs[j] = std::pow(state.tau[j], params.alpha) *
                   std::pow(state.tau0_per_node[j], params.beta);
    }
    if (!any_available) {
        throw std::invalid_argument("cloud_transition_probs: no available resource");
    }
    normalize(probs);
    return probs;
}

Assignment cloud_construct_assignment(const NodePheromoneState& state,
                                      const Workload& workload,
                                      const ResourcePool& pool,
                                      const AcoParams& params,
                                      std::mt19937_64& rng) {
    const std::vector<double> probs = cloud_transition_probs(state, pool, params);
    Assignment assignment;
    assignment.placement.reserve(workload.tasks.size());
    for (std::size_t t = 0; t < workload.tasks.size(); ++t) {
        assignment.placement.push_back(
            static_cast<int>(rng::sample_discrete(probs, rng)));
    }
    return assignment;
}

void cloud_pheromone_update(NodePheromoneState& state,
                            const std::vector<CloudSolution>& ants,
                            const CloudSolution& global_best,
                            const AcoParams& params) {
    const std::size_t r = state.tau.size();

    // Local step: one convex step per resource any ant used, with the
    // deposits of all ants summed. Load stands in for path length.
    for (std::size_t j = 0; j < r; ++j) {
        double deposit = 0.0;
        bool used = false;
        for (const CloudSolution& ant : ants) {
            const double load = ant.metrics.resource_loads[j];
            if (load > 0.0) {
                used = true;
                deposit += params.q / load;
            }
        }
        if (used) {
            state.tau[j] = (1.0 - params.rho) * state.tau[j] + params.rho * deposit;
        }
    }

    // Global step: evaporation everywhere, deposit only where the global
    // best placed work.
    const double best_deposit = 1.0 / global_best.metrics.makespan;
    for (std::size_t j = 0; j < r; ++j) {
        const double delta =
            global_best.metrics.resource_loads[j] > 0.0 ? best_deposit : 0.0;
        state.tau[j] =
            (1.0 - params.alpha_g) * state.tau[j] + params.alpha_g * delta;
    }
}

CloudIteration cloud_iterate(NodePheromoneState& state, const Workload& workload,
                             const ResourcePool& pool, const AcoParams& params,
                             std::uint64_t seed, int iteration,
                             std::optional<CloudSolution>& global_best,
                             const CloudHook& hook) {
    std::vector<CloudSolution> ants;
    ants.reserve(params.num_ants);
    for (int ant = 0; ant < params.num_ants; ++ant) {
        auto ant_rng = rng::substream(seed, rng::stream::ants, iteration, ant);
        CloudSolution sol;
        sol.assignment =
            cloud_construct_assignment(state, workload, pool, params, ant_rng);
        sol.metrics = evaluate(workload, pool, sol.assignment);
        ants.push_back(std::move(sol));
    }

    std::vector<double> makespans(ants.size());
    for (std::size_t k = 0; k < ants.size(); ++k) {
        makespans[k] = ants[k].metrics.makespan;
    }
    CloudIteration stats;
    stats.raw_best_makespan = best_solution(makespans).second;

    if (hook) {
        ants = hook(iteration, std::move(ants));
        if (ants.empty()) {
            throw std::runtime_error("cloud_iterate: hook returned no solutions");
        }
        makespans.resize(ants.size());
        for (std::size_t k = 0; k < ants.size(); ++k) {
            makespans[k] = ants[k].metrics.makespan;
        }
    }
    const auto [best_idx, refined_best] = best_solution(makespans);
    stats.refined_best_makespan = refined_best;

    if (!global_best || refined_best < global_best->metrics.makespan) {
        global_best = ants[best_idx];
    }

    cloud_pheromone_update(state, ants, *global_best, params);

    stats.best_ever_makespan = global_best->metrics.makespan;
    stats.best_ever_mean_completion = global_best->metrics.mean_completion;
    return stats;
}

CloudRunResult run_cloud_aco(const Workload& workload, const ResourcePool& pool,
                             const AcoParams& params, std::uint64_t seed,
                             const CloudHook& hook) {
    validate(params);
    validate(workload);
    validate(pool);

    NodePheromoneState state =
        NodePheromoneState::uniform(pool.resources.size(), params.tau0);
    std::optional<CloudSolution> global_best;

    CloudRunResult result;
    result.trace.reserve(params.max_iterations);
    for (int iter = 0; iter < params.max_iterations; ++iter) {
        result.trace.push_back(
            cloud_iterate(state, workload, pool, params, seed, iter, global_best, hook));
    }
    result.best = global_best->assignment;
    result.best_metrics = global_best->metrics;
    return result;
}

}  // namespace schedsim::aco
