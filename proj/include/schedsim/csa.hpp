#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "schedsim/aco.hpp"
#include "schedsim/model.hpp"

namespace schedsim::csa {

struct CsaParams {
    int pop_size = 10;
    int clone_factor = 5;        // copies made of each individual
    double mutation_rate = 1.0;  // per-clone probability of one reversal
    int t_beta = 12;             // aging threshold
    int replace_count = 1;       // lowest-affinity survivors replaced per generation
    int generations = 50;
};

void validate(const CsaParams& params);

struct Antibody {
    std::vector<int> genotype;
    double affinity = 0.0;  // meaningful only when evaluated
    bool evaluated = false;
    int age = 0;
};

using Population = std::vector<Antibody>;

// What the CSA evolves over: something that can make random genotypes and
// score them. Genotypes are int sequences in both problem flavors
// (placements for cloud scheduling, permutations for tours).
class CsaProblem {
public:
    virtual ~CsaProblem() = default;
    virtual std::vector<int> random_genotype(std::mt19937_64& rng) const = 0;
    virtual double affinity_of(const std::vector<int>& genotype) const = 0;
};

// Cloud scheduling: genotype is an Assignment placement, affinity 1/makespan.
class CloudProblem final : public CsaProblem {
public:
    CloudProblem(const Workload& workload, const ResourcePool& pool);
    std::vector<int> random_genotype(std::mt19937_64& rng) const override;
    double affinity_of(const std::vector<int>& genotype) const override;

private:
    const Workload& workload_;
    const ResourcePool& pool_;
    std::vector<int> available_ids_;
    mutable std::vector<double> loads_;  // scratch; evaluation is single-threaded
};

// TSP: genotype is a city permutation, affinity 1/tour_length.
class TspProblem final : public CsaProblem {
public:
    explicit TspProblem(const aco::TspInstance& inst);
    std::vector<int> random_genotype(std::mt19937_64& rng) const override;
    double affinity_of(const std::vector<int>& genotype) const override;

private:
    const aco::TspInstance& inst_;
};

// Reverse genotype[i..j] in place (inclusive bounds).
void reverse_segment(std::vector<int>& genotype, std::size_t i, std::size_t j);

// pop_size random genotypes, age 0, not yet evaluated.
Population initialize_pop(const CsaProblem& problem, const CsaParams& params,
                          std::mt19937_64& rng);

// Score every antibody that is not already evaluated.
void evaluate(Population& pop, const CsaProblem& problem);

// clone_factor exact copies of each antibody; parents untouched.
Population cloning(const Population& pop, const CsaParams& params);

// Each clone independently, with probability mutation_rate, gets one
// uniformly chosen contiguous segment reversed and its affinity marked
// stale. Clone c draws from a stream derived from (seed, generation, c).
void hypermutation(Population& clones, const CsaParams& params,
                   std::uint64_t seed, int generation);

// Age every antibody by one, except the single highest-affinity one across
// both populations whose age resets to 0; then drop anybody older than
// t_beta.
std::pair<Population, Population> aging(Population parents, Population clones,
                                        const CsaParams& params);

// Keep the pop_size highest-affinity antibodies of the union, then swap the
// replace_count lowest-affinity survivors (never the best) for fresh random
// antibodies. Result has exactly pop_size evaluated antibodies.
Population selection(Population aged_parents, Population aged_clones,
                     const CsaProblem& problem, const CsaParams& params,
                     std::mt19937_64& rng);

struct CsaResult {
    Antibody best;
    std::vector<double> trace;  // best affinity in the population per generation
    Population final_population;
};

// Full evaluate -> cloning -> hypermutation -> evaluate -> aging -> selection
// loop for params.generations generations. An optional seed population
// replaces random initialization (padded with random antibodies if short).
CsaResult run_csa(const CsaProblem& problem, const CsaParams& params,
                  std::uint64_t seed, const Population* seed_population = nullptr);

}  // namespace schedsim::csa
