#include "schedsim/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace schedsim {

std::vector<int> ResourcePool::available_ids() const {
    std::vector<int> ids;
    for (const Resource& r : resources) {
        if (r.available) ids.push_back(r.id);
    }
    return ids;
}

void validate(const Workload& workload) {
    if (workload.tasks.empty()) {
        throw std::invalid_argument("workload: must contain at least one task");
    }
    for (std::size_t i = 0; i < workload.tasks.size(); ++i) {
        const Task& t = workload.tasks[i];
        if (t.id != static_cast<int>(i)) {
            throw std::invalid_argument("workload: task ids must be 0..n-1 in order, got id " +
                                        std::to_string(t.id) + " at index " + std::to_string(i));
        }
        if (!(t.length_mi > 0.0)) {
            throw std::invalid_argument("workload: task " + std::to_string(t.id) +
                                        " has non-positive length");
        }
    }
}

void validate(const ResourcePool& pool) {
    if (pool.resources.empty()) {
        throw std::invalid_argument("pool: must contain at least one resource");
    }
    bool any_available = false;
    for (std::size_t i = 0; i < pool.resources.size(); ++i) {
        const Resource& r = pool.resources[i];
        if (r.id != static_cast<int>(i)) {
            throw std::invalid_argument("pool: resource ids must be 0..r-1 in order, got id " +
                                        std::to_string(r.id) + " at index " + std::to_string(i));
        }
        if (!(r.mips > 0.0)) {
            throw std::invalid_argument("pool: resource " + std::to_string(r.id) +
                                        " has non-positive mips");
        }
        any_available = any_available || r.available;
    }
    if (!any_available) {
        throw std::invalid_argument("pool: no available resource");
    }
}

void validate(const Assignment& assignment, const Workload& workload,
              const ResourcePool& pool) {
    if (assignment.placement.size() != workload.tasks.size()) {
        throw std::invalid_argument("assignment: placement size " +
                                    std::to_string(assignment.placement.size()) +
                                    " does not match task count " +
                                    std::to_string(workload.tasks.size()));
    }
    const int r = static_cast<int>(pool.resources.size());
    for (std::size_t t = 0; t < assignment.placement.size(); ++t) {
        const int id = assignment.placement[t];
        if (id < 0 || id >= r) {
            throw std::invalid_argument("assignment: task " + std::to_string(t) +
                                        " placed on unknown resource " + std::to_string(id));
        }
        if (!pool.resources[id].available) {
            throw std::invalid_argument("assignment: task " + std::to_string(t) +
                                        " placed on unavailable resource " + std::to_string(id));
        }
    }
}

double execution_time(const Task& task, const Resource& resource) {
    if (!(task.length_mi > 0.0)) {
        throw std::invalid_argument("execution_time: non-positive task length");
    }
    if (!(resource.mips > 0.0)) {
        throw std::invalid_argument("execution_time: non-positive resource mips");
    }
    return task.length_mi / resource.mips;
}

ScheduleMetrics evaluate(const Workload& workload, const ResourcePool& pool,
                         const Assignment& assignment) {
    validate(assignment, workload, pool);

    ScheduleMetrics m;
    m.resource_loads.assign(pool.resources.size(), 0.0);

    // Walking tasks in ascending id order makes each load a running prefix
    // sum, which is exactly the completion time of the task just placed.
    double completion_sum = 0.0;
    for (const Task& t : workload.tasks) {
        const int r = assignment.placement[t.id];
        m.resource_loads[r] += execution_time(t, pool.resources[r]);
        completion_sum += m.resource_loads[r];
    }

    m.makespan = *std::max_element(m.resource_loads.begin(), m.resource_loads.end());
    m.mean_completion = completion_sum / static_cast<double>(workload.tasks.size());
    return m;
}

double affinity(const ScheduleMetrics& metrics) {
    return 1.0 / metrics.makespan;
}

}  // namespace schedsim
