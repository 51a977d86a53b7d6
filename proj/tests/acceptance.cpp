// acceptance.cpp — runs the full acceptance checklist and prints one
// pass/fail line per criterion. Exits with the number of failed criteria.

#include "csf/verify.hpp"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <thread>

int main(int argc, char** argv) {
    csf::verify::Options opt;
    opt.jobs = static_cast<int>(std::thread::hardware_concurrency());
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc)
            opt.jobs = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--grid-n") == 0 && i + 1 < argc)
            opt.N = std::atoi(argv[++i]);
    }
    opt.scratch_dir =
        (std::filesystem::temp_directory_path() / "csf_acceptance").string();

    std::cout << "acceptance checklist: class (" << opt.cls.m << "," << opt.cls.n
              << "), N = " << opt.N << ", tau_max = " << opt.tau_max << "\n";
    const auto results = csf::verify::run_all(opt);
    return csf::verify::report(results);
}
