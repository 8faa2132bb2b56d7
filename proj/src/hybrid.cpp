#include "schedsim/hybrid.hpp"

#include <stdexcept>
#include <utility>

#include "schedsim/rng.hpp"

namespace schedsim::hybrid {

void validate(const HybridParams& params) {
    aco::validate(params.aco);
    csa::CsaParams csa_params = params.csa;
    csa_params.pop_size = params.aco.num_ants;
    csa_params.generations = std::max(params.csa_generations_per_iteration, 1);
    csa_params.replace_count = std::min(csa_params.replace_count, csa_params.pop_size);
    csa::validate(csa_params);
    if (params.csa_generations_per_iteration < 0) {
        throw std::invalid_argument("hybrid: csa_generations_per_iteration must be >= 0");
    }
}

std::vector<aco::CloudSolution> refine_solutions(
    std::vector<aco::CloudSolution> ants, const Workload& workload,
    const ResourcePool& pool, const HybridParams& params, std::uint64_t seed,
    int iteration) {
    csa::CloudProblem problem(workload, pool);

    csa::Population seed_pop;
    seed_pop.reserve(ants.size());
    for (const aco::CloudSolution& ant : ants) {
        csa::Antibody ab;
        ab.genotype = ant.assignment.placement;
        ab.affinity = affinity(ant.metrics);
        ab.evaluated = true;
        seed_pop.push_back(std::move(ab));
    }

    csa::CsaParams csa_params = params.csa;
    csa_params.pop_size = static_cast<int>(ants.size());
    csa_params.generations = params.csa_generations_per_iteration;
    csa_params.replace_count = std::min(csa_params.replace_count, csa_params.pop_size);

    // Refinement draws from its own stream family so the ant construction
    // streams are untouched whether or not refinement runs.
    const std::uint64_t csa_seed = rng::mix(seed, rng::stream::csa_refine, iteration);
    csa::CsaResult refined = csa::run_csa(problem, csa_params, csa_seed, &seed_pop);

    std::vector<aco::CloudSolution> out;
    out.reserve(refined.final_population.size());
    for (const csa::Antibody& ab : refined.final_population) {
        aco::CloudSolution sol;
        sol.assignment.placement = ab.genotype;
        sol.metrics = evaluate(workload, pool, sol.assignment);
        out.push_back(std::move(sol));
    }
    return out;
}

aco::CloudHook make_refinement_hook(const Workload& workload,
                                    const ResourcePool& pool,
                                    const HybridParams& params,
                                    std::uint64_t seed) {
    if (params.csa_generations_per_iteration == 0) return nullptr;
    return [&workload, &pool, params, seed](int iteration,
                                            std::vector<aco::CloudSolution> ants) {
        return refine_solutions(std::move(ants), workload, pool, params, seed,
                                iteration);
    };
}

aco::CloudIteration hybrid_iterate(aco::NodePheromoneState& state,
                                   const Workload& workload,
                                   const ResourcePool& pool,
                                   const HybridParams& params, std::uint64_t seed,
                                   int iteration,
                                   std::optional<aco::CloudSolution>& global_best) {
    return aco::cloud_iterate(state, workload, pool, params.aco, seed, iteration,
                              global_best,
                              make_refinement_hook(workload, pool, params, seed));
}

HybridRunResult run_hybrid(const Workload& workload, const ResourcePool& pool,
                           const HybridParams& params, std::uint64_t seed) {
    validate(params);
    aco::AcoParams aco_params = params.aco;
    return aco::run_cloud_aco(workload, pool, aco_params, seed,
                              make_refinement_hook(workload, pool, params, seed));
}

}  // namespace schedsim::hybrid
