#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "schedsim/aco.hpp"
#include "schedsim/csa.hpp"
#include "schedsim/model.hpp"

namespace schedsim::hybrid {

// Cloud ACO with a CSA refinement pass inside every iteration. The CSA
// population size is tied to aco.num_ants when running.
struct HybridParams {
    aco::AcoParams aco;
    csa::CsaParams csa;
    // 0 disables refinement entirely, degenerating to pure cloud ACO.
    int csa_generations_per_iteration = 80;
};

void validate(const HybridParams& params);

// CSA pass over one iteration's ant solutions. Seeds the population from
// the ants, refines for csa_generations_per_iteration generations, and
// returns the refined population as the new solution set.
std::vector<aco::CloudSolution> refine_solutions(
    std::vector<aco::CloudSolution> ants, const Workload& workload,
    const ResourcePool& pool, const HybridParams& params, std::uint64_t seed,
    int iteration);

// Hook wiring refine_solutions into the cloud ACO loop. Null when
// csa_generations_per_iteration is 0.
aco::CloudHook make_refinement_hook(const Workload& workload,
                                    const ResourcePool& pool,
                                    const HybridParams& params,
                                    std::uint64_t seed);

// One hybrid step: ants construct, CSA refines, the refined set drives the
// pheromone update and the global best.
aco::CloudIteration hybrid_iterate(aco::NodePheromoneState& state,
                                   const Workload& workload,
                                   const ResourcePool& pool,
                                   const HybridParams& params, std::uint64_t seed,
                                   int iteration,
                                   std::optional<aco::CloudSolution>& global_best);

using HybridRunResult = aco::CloudRunResult;

HybridRunResult run_hybrid(const Workload& workload, const ResourcePool& pool,
                           const HybridParams& params, std::uint64_t seed);

}  // namespace schedsim::hybrid
