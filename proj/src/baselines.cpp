#include "schedsim/baselines.hpp"

namespace schedsim::baselines {

Assignment round_robin(const Workload& workload, const ResourcePool& pool) {
    validate(workload);
    validate(pool);
    const std::vector<int> available = pool.available_ids();
    Assignment assignment;
    assignment.placement.reserve(workload.tasks.size());
    for (std::size_t t = 0; t < workload.tasks.size(); ++t) {
        assignment.placement.push_back(available[t % available.size()]);
    }
    return assignment;
}

aco::CloudRunResult pure_aco_schedule(const Workload& workload,
                                      const ResourcePool& pool,
                                      const aco::AcoParams& params,
                                      std::uint64_t seed) {
    return aco::run_cloud_aco(workload, pool, params, seed, nullptr);
}

}  // namespace schedsim::baselines
