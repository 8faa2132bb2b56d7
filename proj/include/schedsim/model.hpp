#pragma once

#include <vector>

namespace schedsim {

// One schedulable unit of work, sized in million instructions (MI).
struct Task {
    int id = 0;
    double length_mi = 0.0;
};

// A virtual machine with a fixed processing rate in MIPS.
struct Resource {
    int id = 0;
    double mips = 0.0;
    bool available = true;
};

struct Workload {
    std::vector<Task> tasks;
};

struct ResourcePool {
    std::vector<Resource> resources;

    // Ids of available resources, ascending.
    std::vector<int> available_ids() const;
};

// placement[t] = id of the resource that executes task t. Shared genotype
// of ACO ants and CSA antibodies.
struct Assignment {
    std::vector<int> placement;
};

struct ScheduleMetrics {
    double makespan = 0.0;         // seconds; max resource load
    double mean_completion = 0.0;  // seconds; mean task completion time
    std::vector<double> resource_loads;
};

// Throw std::invalid_argument unless the invariants hold.
void validate(const Workload& workload);
void validate(const ResourcePool& pool);
void validate(const Assignment& assignment, const Workload& workload,
              const ResourcePool& pool);

// Seconds to run `task` on `resource`: length / mips.
double execution_time(const Task& task, const Resource& resource);

// Per-resource loads, makespan and mean completion time of an assignment.
// Tasks sharing a resource run back-to-back in ascending task-id order.
ScheduleMetrics evaluate(const Workload& workload, const ResourcePool& pool,
                         const Assignment& assignment);

// Fitness of a schedule: 1 / makespan. Strictly decreasing in makespan.
double affinity(const ScheduleMetrics& metrics);

}  // namespace schedsim
