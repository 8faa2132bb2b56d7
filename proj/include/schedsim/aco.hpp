#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "schedsim/model.hpp"

namespace schedsim::aco {

// Shared ant-system parameters. Defaults are the conventional settings the
// harness uses unless the config overrides them.
struct AcoParams {
    double alpha = 1.0;    // pheromone importance exponent
    double beta = 2.0;     // heuristic importance exponent
    double rho = 0.1;      // local persistence, in (0,1)
    double alpha_g = 0.1;  // global evaporation coefficient, in (0,1)
    double q = 100.0;      // local deposit constant
    double tau0 = 1.0;     // initial pheromone level
    int num_ants = 10;
    int max_iterations = 50;
};

// Throws std::invalid_argument when a parameter is out of range.
void validate(const AcoParams& params);

// Symmetric TSP instance with positive off-diagonal distances.
struct TspInstance {
    int n = 0;
    std::vector<std::vector<double>> dist;
};

void validate(const TspInstance& inst);

// Edge pheromone matrix tau[i][j], kept symmetric.
struct EdgePheromoneState {
    std::vector<std::vector<double>> tau;

    static EdgePheromoneState uniform(int n, double tau0);
};

// Per-resource pheromone concentrations; tau0_per_node doubles as the
// intrinsic heuristic eta_j.
struct NodePheromoneState {
    std::vector<double> tau;
    std::vector<double> tau0_per_node;

    static NodePheromoneState uniform(std::size_t num_resources, double tau0);
};

// An ant's tour under construction; `visited` is the taboo mask and `tour`
// the ordered visit sequence.
struct TourState {
    int current_city = -1;
    std::vector<char> visited;
    double partial_length = 0.0;
    std::vector<int> tour;
    double tour_length = 0.0;  // set once the tour is complete
    bool complete = false;
};

// Probability of moving to each city: tau^alpha * eta^beta over unvisited
// cities, normalized; visited cities get exactly 0. eta_ij = 1/d_ij.
std::vector<double> tsp_transition_probs(const EdgePheromoneState& state,
                                         const TspInstance& inst,
                                         const TourState& tour,
                                         const AcoParams& params);

// Build a complete tour from a random start city. Pheromone is read-only
// during construction; deposits happen in the update phase.
TourState tsp_construct_tour(const EdgePheromoneState& state,
                             const TspInstance& inst, const AcoParams& params,
                             std::mt19937_64& rng);

// tau_ij <- (1-rho)*tau_ij + rho*delta for the one directed edge (i,j).
void tsp_local_update(EdgePheromoneState& state, int i, int j, double delta,
                      const AcoParams& params);

// Per-edge local deposits for one completed tour: each traversed edge gets
// delta = q / (path length walked so far, including that edge). Applied to
// both directions of each edge.
void tsp_deposit_tour(EdgePheromoneState& state, const TourState& tour,
                      const TspInstance& inst, const AcoParams& params);

// Minimum value and the smallest index attaining it.
std::pair<std::size_t, double> best_solution(std::span<const double> values);

// tau <- (1-alpha_g)*tau + alpha_g*deposit on every edge; deposit is
// 1/tour_length on edges of the global-best tour and 0 elsewhere.
void tsp_global_update(EdgePheromoneState& state, const TourState& best_tour,
                       const AcoParams& params);

struct TspRunResult {
    TourState best;
    std::vector<double> trace;  // best-ever tour length after each iteration
};

TspRunResult run_tsp_aco(const TspInstance& inst, const AcoParams& params,
                         std::uint64_t seed);

// p_j = tau_j^alpha * eta_j^beta normalized over available resources;
// unavailable resources get exactly 0.
std::vector<double> cloud_transition_probs(const NodePheromoneState& state,
                                           const ResourcePool& pool,
                                           const AcoParams& params);

// One ant's assignment: every task sampled independently, ascending task id.
Assignment cloud_construct_assignment(const NodePheromoneState& state,
                                      const Workload& workload,
                                      const ResourcePool& pool,
                                      const AcoParams& params,
                                      std::mt19937_64& rng);

struct CloudSolution {
    Assignment assignment;
    ScheduleMetrics metrics;
};

// Local step: resources used by any ant get a single convex step with the
// summed deposit q/load_j(ant). Global step: every resource evaporates by
// (1-alpha_g); resources used by the global best also receive
// alpha_g * (1/makespan_best).
void cloud_pheromone_update(NodePheromoneState& state,
                            const std::vector<CloudSolution>& ants,
                            const CloudSolution& global_best,
                            const AcoParams& params);

struct CloudIteration {
    double raw_best_makespan = 0.0;      // best ant before any refinement
    double refined_best_makespan = 0.0;  // best after the iteration hook
    double best_ever_makespan = 0.0;
    double best_ever_mean_completion = 0.0;
};

// Optional per-iteration refinement. Receives the iteration index and the
// ant solutions, returns the solution set that feeds the pheromone update
// and the global-best bookkeeping.
using CloudHook =
    std::function<std::vector<CloudSolution>(int iteration,
                                             std::vector<CloudSolution> ants)>;

// One construct -> evaluate -> hook -> pheromone-update step. Updates
// `global_best` in place and reports the iteration stats.
CloudIteration cloud_iterate(NodePheromoneState& state, const Workload& workload,
                             const ResourcePool& pool, const AcoParams& params,
                             std::uint64_t seed, int iteration,
                             std::optional<CloudSolution>& global_best,
                             const CloudHook& hook);

struct CloudRunResult {
    Assignment best;
    ScheduleMetrics best_metrics;
    std::vector<CloudIteration> trace;
};

// Full cloud-mode run. Ant k of iteration t draws from a stream derived
// from (seed, t, k), so runs are reproducible and hook refinement never
// perturbs construction randomness.
CloudRunResult run_cloud_aco(const Workload& workload, const ResourcePool& pool,
                             const AcoParams& params, std::uint64_t seed,
                             const CloudHook& hook = nullptr);

}  // namespace schedsim::aco
