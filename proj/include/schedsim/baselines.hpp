#pragma once

#include <cstdint>

#include "schedsim/aco.hpp"
#include "schedsim/model.hpp"

namespace schedsim::baselines {

// Cyclic task-to-resource placement over the available resources in id
// order. Ignores task lengths and resource speeds.
Assignment round_robin(const Workload& workload, const ResourcePool& pool);

// Pure cloud-mode ACO, no refinement hook.
aco::CloudRunResult pure_aco_schedule(const Workload& workload,
                                      const ResourcePool& pool,
                                      const aco::AcoParams& params,
                                      std::uint64_t seed);

}  // namespace schedsim::baselines
