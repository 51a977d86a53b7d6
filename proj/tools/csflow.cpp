// csflow.cpp — experiment driver for the saddle-point study of immersed
// self-similar curves under the curve shortening flow.

#include "csf/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common_flags(CLI::App* cmd, csf::ExperimentConfig& cfg, std::string& frame,
                      std::string& leaf) {
    cmd->add_option("--m", cfg.cls.m, "rotation index m")->capture_default_str();
    cmd->add_option("--n", cfg.cls.n, "leaf count n")->capture_default_str();
    cmd->add_option("--grid-n", cfg.N, "grid sample count (even, >= 64)")
        ->capture_default_str();
    cmd->add_option("--cfl", cfg.rc.cfl, "CFL number for dt = cfl dtheta^2 / max kappa^2")
        ->capture_default_str();
    cmd->add_option("--tau-max", cfg.rc.time_max, "time horizon in the active frame")
        ->capture_default_str();
    cmd->add_option("--kappa-cap", cfg.rc.kappa_cap, "curvature blowup threshold")
        ->capture_default_str();
    cmd->add_option("--record-every", cfg.rc.record_every, "diagnostic sampling interval")
        ->capture_default_str();
    cmd->add_option("--conv-tol", cfg.rc.conv_tol, "stationarity threshold on max|rhs|")
        ->capture_default_str();
    cmd->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--frame", frame, "normalized | unnormalized")->capture_default_str();
    cmd->add_option("--leaf", leaf, "leaf tracking: off | self | full")
        ->capture_default_str();
}

bool apply_frame_and_leaf(csf::ExperimentConfig& cfg, const std::string& frame,
                          const std::string& leaf) {
    if (frame == "normalized") {
        cfg.frame = csf::Frame::normalized;
    } else if (frame == "unnormalized") {
        cfg.frame = csf::Frame::unnormalized;
    } else {
        std::cerr << "unknown frame: " << frame << '\n';
        return false;
    }
    if (leaf == "off") {
        cfg.rc.leaf = csf::LeafTracking::off;
    } else if (leaf == "self") {
        cfg.rc.leaf = csf::LeafTracking::self_intersection;
    } else if (leaf == "full") {
        cfg.rc.leaf = csf::LeafTracking::full_area;
    } else {
        std::cerr << "unknown leaf mode: " << leaf << '\n';
        return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"curve shortening flow near immersed self-similar curves"};
    app.require_subcommand(1);

    csf::ExperimentConfig cfg;
    std::string frame = "normalized";
    std::string leaf = "off";

    CLI::App* profile = app.add_subcommand("profile", "construct the stationary profile");
    CLI::App* evolve = app.add_subcommand("evolve", "evolve the perturbed profile");
    CLI::App* sweep = app.add_subcommand("sweep", "run the epsilon sweep");
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance checklist");

    for (CLI::App* cmd : {profile, evolve, sweep, verify})
        add_common_flags(cmd, cfg, frame, leaf);
    for (CLI::App* cmd : {evolve, sweep})
        cmd->add_option("--eps", cfg.eps, "perturbation size (repeatable)")
            ->expected(-1);
    for (CLI::App* cmd : {sweep, verify})
        cmd->add_option("--jobs", cfg.jobs, "worker pool size (0 = all cores)")
            ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (!apply_frame_and_leaf(cfg, frame, leaf)) return 1;

    try {
        if (profile->parsed()) {
            cfg.scenario = csf::Scenario::profile;
            return csf::experiment::cmd_profile(cfg);
        }
        if (evolve->parsed()) {
            cfg.scenario = csf::Scenario::evolve;
            return csf::experiment::cmd_evolve(cfg);
        }
        if (sweep->parsed()) {
            cfg.scenario = csf::Scenario::sweep;
            return csf::experiment::cmd_sweep(cfg);
        }
        cfg.scenario = csf::Scenario::verify;
        return csf::experiment::cmd_verify(cfg);
    } catch (const csf::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
