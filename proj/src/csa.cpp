#include "schedsim/csa.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "schedsim/rng.hpp"

namespace schedsim::csa {

void validate(const CsaParams& params) {
    if (params.pop_size < 1) throw std::invalid_argument("csa: pop_size must be >= 1");
    if (params.clone_factor < 1) {
        throw std::invalid_argument("csa: clone_factor must be >= 1");
    }
    // 0 is accepted as the no-mutation limit; several contracts are stated
    // in terms of it.
    if (!(params.mutation_rate >= 0.0 && params.mutation_rate <= 1.0)) {
        throw std::invalid_argument("csa: mutation_rate must be in [0,1]");
    }
    if (params.t_beta < 1) throw std::invalid_argument("csa: t_beta must be >= 1");
    if (params.replace_count < 0 || params.replace_count > params.pop_size) {
        throw std::invalid_argument("csa: replace_count must be in [0, pop_size]");
    }
    if (params.generations < 1) {
        throw std::invalid_argument("csa: generations must be >= 1");
    }
}

CloudProblem::CloudProblem(const Workload& workload, const ResourcePool& pool)
    : workload_(workload), pool_(pool), available_ids_(pool.available_ids()) {
    schedsim::validate(workload);
    schedsim::validate(pool);
}

std::vector<int> CloudProblem::random_genotype(std::mt19937_64& rng) const {
    std::vector<int> placement(workload_.tasks.size());
    const int k = static_cast<int>(available_ids_.size());
    for (int& slot : placement) {
        slot = available_ids_[rng::uniform_int(rng, k)];
    }
    return placement;
}

double CloudProblem::affinity_of(const std::vector<int>& genotype) const {
    // Hot path: mirrors evaluate()'s accumulation order exactly so the
    // affinity equals 1 / evaluate(...).makespan bit for bit, without the
    // assignment copy or metrics struct.
    const std::size_t n = workload_.tasks.size();
    if (genotype.size() != n) {
        throw std::invalid_argument("affinity: placement size mismatch");
    }
    const int k = static_cast<int>(pool_.resources.size());
    loads_.assign(pool_.resources.size(), 0.0);
    for (const Task& t : workload_.tasks) {
        const int r = genotype[t.id];
        if (r < 0 || r >= k || !pool_.resources[r].available) {
            throw std::invalid_argument("affinity: task placed on invalid resource");
        }
        loads_[r] += t.length_mi / pool_.resources[r].mips;
    }
    return 1.0 / *std::max_element(loads_.begin(), loads_.end());
}

TspProblem::TspProblem(const aco::TspInstance& inst) : inst_(inst) {
    aco::validate(inst);
}

std::vector<int> TspProblem::random_genotype(std::mt19937_64& rng) const {
    std::vector<int> perm(inst_.n);
    std::iota(perm.begin(), perm.end(), 0);
    // Fisher-Yates with our own draws so results never depend on the
    // standard library's shuffle implementation.
    for (int i = inst_.n - 1; i > 0; --i) {
        const int j = rng::uniform_int(rng, i + 1);
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

double TspProblem::affinity_of(const std::vector<int>& genotype) const {
    double length = 0.0;
    const std::size_t n = genotype.size();
    for (std::size_t s = 0; s < n; ++s) {
        length += inst_.dist[genotype[s]][genotype[(s + 1) % n]];
    }
    return 1.0 / length;
}

void reverse_segment(std::vector<int>& genotype, std::size_t i, std::size_t j) {
    if (i > j || j >= genotype.size()) {
        throw std::invalid_argument("reverse_segment: bad segment bounds");
    }
    std::reverse(genotype.begin() + static_cast<std::ptrdiff_t>(i),
                 genotype.begin() + static_cast<std::ptrdiff_t>(j) + 1);
}

Population initialize_pop(const CsaProblem& problem, const CsaParams& params,
                          std::mt19937_64& rng) {
    Population pop;
    pop.reserve(params.pop_size);
    for (int i = 0; i < params.pop_size; ++i) {
        Antibody ab;
        ab.genotype = problem.random_genotype(rng);
        pop.push_back(std::move(ab));
    }
    return pop;
}

void evaluate(Population& pop, const CsaProblem& problem) {
    for (Antibody& ab : pop) {
        if (!ab.evaluated) {
            ab.affinity = problem.affinity_of(ab.genotype);
            ab.evaluated = true;
        }
    }
}

Population cloning(const Population& pop, const CsaParams& params) {
    Population clones;
    clones.reserve(pop.size() * static_cast<std::size_t>(params.clone_factor));
    for (const Antibody& parent : pop) {
        for (int c = 0; c < params.clone_factor; ++c) {
            clones.push_back(parent);
        }
    }
    return clones;
}

namespace {

// Uniform pick among the L(L+1)/2 contiguous segments [i, j], i <= j,
// indexed by a unit draw.
std::pair<std::size_t, std::size_t> segment_at(std::size_t len, double u) {
    const std::size_t total = len * (len + 1) / 2;
    std::size_t k = static_cast<std::size_t>(u * static_cast<double>(total));
    if (k >= total) k = total - 1;
    for (std::size_t i = 0; i < len; ++i) {
        const std::size_t starting_here = len - i;
        if (k < starting_here) return {i, i + k};
        k -= starting_here;
    }
    return {len - 1, len - 1};
}

}  // namespace

void hypermutation(Population& clones, const CsaParams& params,
                   std::uint64_t seed, int generation) {
    // Each clone gets its own (seed, generation, index) coordinate; two
    // direct draws are all a mutation decision needs, so no generator.
    for (std::size_t c = 0; c < clones.size(); ++c) {
        const std::uint64_t base = rng::mix(seed, rng::stream::csa_clones,
                                            static_cast<std::uint64_t>(generation), c);
        if (rng::to_unit01(rng::mix(base, 0)) >= params.mutation_rate) continue;
        const auto [i, j] =
            segment_at(clones[c].genotype.size(), rng::to_unit01(rng::mix(base, 1)));
        reverse_segment(clones[c].genotype, i, j);
        clones[c].evaluated = false;
    }
}

namespace {

// Index of the single highest-affinity antibody over parents ++ clones;
// ties go to the earliest position.
std::size_t best_index(const Population& parents, const Population& clones) {
    std::size_t best = 0;
    double best_affinity = -1.0;
    std::size_t idx = 0;
    for (const Population* pop : {&parents, &clones}) {
        for (const Antibody& ab : *pop) {
            if (!ab.evaluated) {
                throw std::invalid_argument("aging/selection: population not evaluated");
            }
            if (ab.affinity > best_affinity) {
                best_affinity = ab.affinity;
                best = idx;
            }
            ++idx;
        }
    }
    return best;
}

}  // namespace

std::pair<Population, Population> aging(Population parents, Population clones,
                                        const CsaParams& params) {
    const std::size_t best = best_index(parents, clones);

    std::size_t idx = 0;
    for (Population* pop : {&parents, &clones}) {
        for (Antibody& ab : *pop) {
            ab.age = (idx == best) ? 0 : ab.age + 1;
            ++idx;
        }
    }
    const auto too_old = [&](const Antibody& ab) { return ab.age > params.t_beta; };
    std::erase_if(parents, too_old);
    std::erase_if(clones, too_old);
    return {std::move(parents), std::move(clones)};
}

Population selection(Population aged_parents, Population aged_clones,
                     const CsaProblem& problem, const CsaParams& params,
                     std::mt19937_64& rng) {
    Population union_pop;
    union_pop.reserve(aged_parents.size() + aged_clones.size());
    std::move(aged_parents.begin(), aged_parents.end(), std::back_inserter(union_pop));
    std::move(aged_clones.begin(), aged_clones.end(), std::back_inserter(union_pop));
    for (const Antibody& ab : union_pop) {
        if (!ab.evaluated) {
            throw std::invalid_argument("selection: population not evaluated");
        }
    }

    // Rank by affinity, ties by position (parents before clones).
    std::vector<std::size_t> order(union_pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (union_pop[a].affinity != union_pop[b].affinity) {
            return union_pop[a].affinity > union_pop[b].affinity;
        }
        return a < b;
    });

    const std::size_t keep =
        std::min<std::size_t>(order.size(), static_cast<std::size_t>(params.pop_size));
    Population next;
    next.reserve(params.pop_size);
    for (std::size_t i = 0; i < keep; ++i) {
        next.push_back(std::move(union_pop[order[i]]));
    }

    // Drop the lowest-affinity survivors, never the best one.
    std::size_t drop = std::min<std::size_t>(params.replace_count,
                                             next.empty() ? 0 : next.size() - 1);
    next.erase(next.end() - static_cast<std::ptrdiff_t>(drop), next.end());

    // Fresh random antibodies fill whatever is missing.
    while (next.size() < static_cast<std::size_t>(params.pop_size)) {
        Antibody ab;
        ab.genotype = problem.random_genotype(rng);
        ab.affinity = problem.affinity_of(ab.genotype);
        ab.evaluated = true;
        next.push_back(std::move(ab));
    }
    return next;
}

CsaResult run_csa(const CsaProblem& problem, const CsaParams& params,
                  std::uint64_t seed, const Population* seed_population) {
    validate(params);

    auto main_rng = rng::substream(seed, rng::stream::csa_main);
    Population pop;
    if (seed_population) {
        if (seed_population->size() > static_cast<std::size_t>(params.pop_size)) {
            throw std::invalid_argument("run_csa: seed population larger than pop_size");
        }
        pop = *seed_population;
        for (Antibody& ab : pop) ab.age = 0;
        while (pop.size() < static_cast<std::size_t>(params.pop_size)) {
            Antibody ab;
            ab.genotype = problem.random_genotype(main_rng);
            pop.push_back(std::move(ab));
        }
    } else {
        pop = initialize_pop(problem, params, main_rng);
    }

    CsaResult result;
    result.trace.reserve(params.generations);
    bool have_best = false;

    for (int g = 0; g < params.generations; ++g) {
        evaluate(pop, problem);
        Population clones = cloning(pop, params);
        hypermutation(clones, params, seed, g);
        evaluate(clones, problem);
        auto [aged_parents, aged_clones] =
            aging(std::move(pop), std::move(clones), params);
        pop = selection(std::move(aged_parents), std::move(aged_clones), problem,
                        params, main_rng);

        double gen_best = -1.0;
        std::size_t gen_best_idx = 0;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            if (pop[i].affinity > gen_best) {
                gen_best = pop[i].affinity;
                gen_best_idx = i;
            }
        }
        result.trace.push_back(gen_best);
        if (!have_best || gen_best > result.best.affinity) {
            result.best = pop[gen_best_idx];
            have_best = true;
        }
    }

    result.final_population = std::move(pop);
    return result;
}

}  // namespace schedsim::csa
