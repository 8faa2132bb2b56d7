#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "schedsim/aco.hpp"
#include "schedsim/model.hpp"

namespace schedsim::io {

// Bad file content or configuration; the CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unreadable/unwritable paths; the CLI maps this to exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CSV with header `task_id,length_mi`. Rows may appear in any order; ids
// must form 0..n-1.
Workload load_workload_csv(const std::filesystem::path& path);

// CSV with header `vm_id,mips,available`, available in {0,1}.
ResourcePool load_pool_csv(const std::filesystem::path& path);

// Either an edge list with header `i,j,distance` (each undirected edge at
// least once; duplicates must agree) or a full n x n matrix of numbers.
aco::TspInstance load_tsp_csv(const std::filesystem::path& path);

}  // namespace schedsim::io
