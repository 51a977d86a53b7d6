// test_experiment.cpp — scenario drivers: exit codes, file outputs,
// determinism across reruns and worker counts.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csf/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace csf;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("csf_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

ExperimentConfig quick_config() {
    ExperimentConfig cfg;
    cfg.cls = {2, 3};
    cfg.N = 256;
    cfg.rc.time_max = 0.3;
    return cfg;
}

} // namespace

TEST_CASE("profile scenario writes the full record set and exits 0") {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::profile;
    cfg.out_dir = fresh_dir("profile").string();
    CHECK(experiment::cmd_profile(cfg) == 0);
    for (const char* f : {"profile.txt", "profile.json", "curve.csv", "summary.txt"})
        CHECK(fs::exists(fs::path(cfg.out_dir) / f));

    const std::string summary = slurp(fs::path(cfg.out_dir) / "summary.txt");
    CHECK(summary.find("A = 6.283185307179") != std::string::npos);  // 2π to 1e-9
    CHECK(summary.find("residual") != std::string::npos);

    const std::string curve = slurp(fs::path(cfg.out_dir) / "curve.csv");
    CHECK(curve.rfind("theta,x,y,kappa\n", 0) == 0);
}

TEST_CASE("profile scenario rejects an inadmissible class with exit 1") {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::profile;
    cfg.cls = {1, 2};
    cfg.out_dir = fresh_dir("prof_bad").string();
    CHECK(experiment::cmd_profile(cfg) == 1);
}

TEST_CASE("profile scenario reports a resolution diagnostic for tiny grids") {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::profile;
    cfg.cls = {3, 5};
    cfg.N = 64;  // below 16 samples per fundamental period
    cfg.out_dir = fresh_dir("prof_small").string();
    CHECK(experiment::cmd_profile(cfg) == 1);
}

TEST_CASE("evolve scenario: time limit exit and summary fields") {
    ExperimentConfig cfg = quick_config();
    cfg.scenario = Scenario::evolve;
    cfg.eps = {0.05};
    cfg.out_dir = fresh_dir("evolve").string();
    CHECK(experiment::cmd_evolve(cfg) == 3);  // horizon far too short to converge

    const std::string summary = slurp(fs::path(cfg.out_dir) / "summary.txt");
    CHECK(summary.find("verdict = time_limit") != std::string::npos);
    const std::string diag = slurp(fs::path(cfg.out_dir) / "diagnostics.csv");
    CHECK(diag.rfind("time,A,L,E,F,u,W,min_h,max_h,min_k,max_k,zero_count,leaf_area\n", 0) ==
          0);
    // 31 records (tau = 0 .. 0.3 inclusive) plus header
    CHECK(std::count(diag.begin(), diag.end(), '\n') == 32);
}

TEST_CASE("evolve scenario rejects epsilon outside the admissible range") {
    ExperimentConfig cfg = quick_config();
    cfg.scenario = Scenario::evolve;
    cfg.eps = {-0.9};
    cfg.out_dir = fresh_dir("evolve_bad").string();
    CHECK(experiment::cmd_evolve(cfg) == 1);
}

TEST_CASE("evolve scenario is byte-deterministic") {
    ExperimentConfig cfg = quick_config();
    cfg.scenario = Scenario::evolve;
    cfg.eps = {0.05};
    cfg.out_dir = fresh_dir("det_a").string();
    CHECK(experiment::cmd_evolve(cfg) == 3);
    const std::string first = slurp(fs::path(cfg.out_dir) / "diagnostics.csv");

    cfg.out_dir = fresh_dir("det_b").string();
    CHECK(experiment::cmd_evolve(cfg) == 3);
    const std::string second = slurp(fs::path(cfg.out_dir) / "diagnostics.csv");
    CHECK(first == second);
    CHECK_FALSE(first.empty());
}

TEST_CASE("sweep output is independent of the worker count") {
    ExperimentConfig cfg = quick_config();
    cfg.scenario = Scenario::sweep;
    cfg.eps = {0.02, -0.02, 0.01, -0.01};

    cfg.jobs = 1;
    cfg.out_dir = fresh_dir("sweep_serial").string();
    const int code1 = experiment::cmd_sweep(cfg);
    const std::string serial = slurp(fs::path(cfg.out_dir) / "sweep.csv");

    cfg.jobs = 4;
    cfg.out_dir = fresh_dir("sweep_parallel").string();
    const int code4 = experiment::cmd_sweep(cfg);
    const std::string parallel = slurp(fs::path(cfg.out_dir) / "sweep.csv");

    CHECK(code1 == code4);
    CHECK(code1 == 3);  // the short horizon leaves every run at the time limit
    CHECK(serial == parallel);
    // rows sorted by eps regardless of completion order
    CHECK(serial.find("-0.02") < serial.find("-0.01"));
    CHECK(serial.find("-0.01") < serial.find("0.01,"));
}

TEST_CASE("config validation rejects out-of-contract parameters") {
    ExperimentConfig cfg = quick_config();
    cfg.rc.cfl = 1.0;  // the stability contract caps cfl at 0.5
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);

    ExperimentConfig c2 = quick_config();
    c2.N = 63;
    CHECK_THROWS_AS(c2.validate(), InvalidConfig);

    ExperimentConfig c3 = quick_config();
    c3.eps.clear();
    CHECK_THROWS_AS(c3.validate(), InvalidConfig);

    ExperimentConfig c4 = quick_config();
    c4.cls = {2, 4};
    CHECK_THROWS_AS(c4.validate(), InvalidClass);
}

TEST_CASE("17-digit formatting round-trips doubles") {
    for (double v : {1.0 / 3.0, 2.0 * pi, 1e-300, -0.05, 123456.789012345678}) {
        const std::string s = experiment::format_g17(v);
        CHECK(std::stod(s) == v);
    }
}
