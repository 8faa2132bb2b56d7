#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "schedsim/io.hpp"

using namespace schedsim;

namespace {

struct TempFile {
    std::filesystem::path path;

    explicit TempFile(const std::string& content) {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("schedsim_io_test_" + std::to_string(counter++) + ".csv");
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }
};

}  // namespace

TEST_CASE("workload CSV loads and sorts by task id") {
    TempFile f("task_id,length_mi\n2,300\n0,100\n1,200.5\n");
    const Workload w = io::load_workload_csv(f.path);
    REQUIRE(w.tasks.size() == 3);
    CHECK(w.tasks[0].id == 0);
    CHECK(w.tasks[0].length_mi == 100.0);
    CHECK(w.tasks[1].length_mi == 200.5);
    CHECK(w.tasks[2].length_mi == 300.0);
}

TEST_CASE("workload CSV rejects bad headers and rows") {
    TempFile bad_header("id,length\n0,100\n");
    CHECK_THROWS_AS(io::load_workload_csv(bad_header.path), io::ConfigError);

    TempFile bad_number("task_id,length_mi\n0,abc\n");
    CHECK_THROWS_AS(io::load_workload_csv(bad_number.path), io::ConfigError);

    TempFile gap_ids("task_id,length_mi\n0,100\n2,100\n");
    CHECK_THROWS_AS(io::load_workload_csv(gap_ids.path), io::ConfigError);

    TempFile zero_length("task_id,length_mi\n0,0\n");
    CHECK_THROWS_AS(io::load_workload_csv(zero_length.path), io::ConfigError);

    CHECK_THROWS_AS(io::load_workload_csv("/nonexistent/nowhere.csv"), io::IoError);
}

TEST_CASE("pool CSV loads availability flags") {
    TempFile f("vm_id,mips,available\n0,500,1\n1,250,0\n2,1000,1\n");
    const ResourcePool p = io::load_pool_csv(f.path);
    REQUIRE(p.resources.size() == 3);
    CHECK(p.resources[0].available);
    CHECK_FALSE(p.resources[1].available);
    CHECK(p.resources[1].mips == 250.0);
    CHECK(p.available_ids() == std::vector<int>{0, 2});
}

TEST_CASE("pool CSV rejects malformed content") {
    TempFile bad_avail("vm_id,mips,available\n0,500,2\n");
    CHECK_THROWS_AS(io::load_pool_csv(bad_avail.path), io::ConfigError);

    TempFile none_avail("vm_id,mips,available\n0,500,0\n");
    CHECK_THROWS_AS(io::load_pool_csv(none_avail.path), io::ConfigError);

    TempFile bad_mips("vm_id,mips,available\n0,-5,1\n");
    CHECK_THROWS_AS(io::load_pool_csv(bad_mips.path), io::ConfigError);
}

TEST_CASE("TSP CSV accepts a full matrix") {
    TempFile f("0,2,3\n2,0,4\n3,4,0\n");
    const aco::TspInstance inst = io::load_tsp_csv(f.path);
    CHECK(inst.n == 3);
    CHECK(inst.dist[0][1] == 2.0);
    CHECK(inst.dist[2][1] == 4.0);
}

TEST_CASE("TSP CSV accepts an edge list") {
    TempFile f("i,j,distance\n0,1,2\n0,2,3\n1,2,4\n");
    const aco::TspInstance inst = io::load_tsp_csv(f.path);
    CHECK(inst.n == 3);
    CHECK(inst.dist[1][0] == 2.0);
    CHECK(inst.dist[1][2] == 4.0);
    CHECK(inst.dist[0][0] == 0.0);
}

TEST_CASE("TSP edge list rejects gaps and conflicts") {
    TempFile missing("i,j,distance\n0,1,2\n0,2,3\n");
    CHECK_THROWS_AS(io::load_tsp_csv(missing.path), io::ConfigError);

    TempFile conflict("i,j,distance\n0,1,2\n1,0,5\n");
    CHECK_THROWS_AS(io::load_tsp_csv(conflict.path), io::ConfigError);

    TempFile asym("0,2\n3,0\n");
    CHECK_THROWS_AS(io::load_tsp_csv(asym.path), io::ConfigError);
}
