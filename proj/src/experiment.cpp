// experiment.cpp — scenario execution and deterministic serialization.

#include "csf/experiment.hpp"

#include "csf/geometry.hpp"
#include "csf/spectral.hpp"
#include "csf/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace csf {

void ExperimentConfig::validate() const {
    cls.validate();
    if (N < 64 || N % 2 != 0)
        throw InvalidConfig("config: grid size must be even and >= 64");
    if (N < 16 * cls.n)
        throw InvalidConfig("config: resolution too small, need N >= 16 n for this class");
    rc.validate();
    if (eps.empty()) throw InvalidConfig("config: need at least one epsilon");
    if (scenario == Scenario::sweep && jobs < 0)
        throw InvalidConfig("config: jobs must be >= 0");
}

namespace experiment {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

namespace fs = std::filesystem;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw InvalidConfig("cannot open output file: " + path);
    os << content;
}

std::string summary_line(const std::string& key, const std::string& value) {
    return key + " = " + value + "\n";
}

RunConfig class_run_config(const ExperimentConfig& cfg) {
    RunConfig rc = cfg.rc;
    rc.symmetry = SymmetryClass{cfg.cls.n, true};
    return rc;
}

} // namespace

void write_diagnostics_csv(const std::vector<DiagnosticsRecord>& records,
                           const std::string& path) {
    std::ostringstream os;
    os << functionals::csv_header() << '\n';
    for (const DiagnosticsRecord& r : records) os << functionals::to_csv_row(r) << '\n';
    write_file(path, os.str());
}

ALProfile build_base(const ExperimentConfig& cfg) {
    return al::build_profile(cfg.cls, Grid::make(cfg.cls.m, cfg.N));
}

RunOutcome run_epsilon(const ALProfile& base, double eps, const ExperimentConfig& cfg) {
    const PerturbedProfile p = al::perturb(base, eps);
    FlowState initial;
    initial.profile = p.profile;
    initial.time = 0.0;
    initial.frame = cfg.frame;
    initial.representation = Representation::support;
    initial.epsilon = eps;
    return run(initial, class_run_config(cfg));
}

std::vector<SweepRow> run_sweep(const ALProfile& base, const ExperimentConfig& cfg) {
    std::vector<double> eps_sorted = cfg.eps;
    std::sort(eps_sorted.begin(), eps_sorted.end());

    // Reject invalid epsilons before any run starts.
    for (double e : eps_sorted) (void)al::perturb(base, e);

    std::vector<SweepRow> rows(eps_sorted.size());
    const int count = static_cast<int>(eps_sorted.size());
#ifdef _OPENMP
    int jobs = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
    jobs = std::min(jobs, count);
#pragma omp parallel for num_threads(jobs) schedule(dynamic, 1)
#endif
    for (int i = 0; i < count; ++i) {
        rows[static_cast<size_t>(i)].eps = eps_sorted[static_cast<size_t>(i)];
        rows[static_cast<size_t>(i)].outcome =
            run_epsilon(base, eps_sorted[static_cast<size_t>(i)], cfg);
    }
    return rows;
}

bool dichotomy_holds(const std::vector<SweepRow>& rows) {
    for (const SweepRow& row : rows) {
        if (row.eps > 0.0 && row.outcome.verdict != Verdict::converged_to_circle)
            return false;
        if (row.eps < 0.0 && row.outcome.verdict != Verdict::touched_origin_then_blowup &&
            row.outcome.verdict != Verdict::blowup)
            return false;
        if (row.eps == 0.0 && row.outcome.verdict != Verdict::converged_to_stationary)
            return false;
    }
    return true;
}

int cmd_profile(const ExperimentConfig& cfg) {
    try {
        cfg.validate();
    } catch (const Error& e) {
        std::cerr << "config rejected: " << e.what() << '\n';
        return 1;
    }
    ALProfile base;
    try {
        base = build_base(cfg);
    } catch (const Error& e) {
        std::cerr << "profile construction failed: " << e.what() << '\n';
        return 1;
    }

    fs::create_directories(cfg.out_dir);
    {
        std::ofstream os(cfg.out_dir + "/profile.txt", std::ios::binary | std::ios::trunc);
        al::write_profile_text(base, os);
    }
    write_file(cfg.out_dir + "/profile.json", al::profile_to_json(base));

    const CurveSample curve = geometry::reconstruct(base.profile);
    {
        std::ostringstream os;
        os << "theta,x,y,kappa\n";
        for (int i = 0; i < base.profile.size(); ++i)
            os << format_g17(base.profile.grid.node(i)) << ',' << format_g17(curve.x[i])
               << ',' << format_g17(curve.y[i]) << ',' << format_g17(curve.kappa[i]) << '\n';
        write_file(cfg.out_dir + "/curve.csv", os.str());
    }

    const double A = functionals::algebraic_area(base.profile);
    const PeriodicProfile kappa = curvature_of(base.profile);
    std::ostringstream sum;
    sum << summary_line("m", std::to_string(cfg.cls.m));
    sum << summary_line("n", std::to_string(cfg.cls.n));
    sum << summary_line("N", std::to_string(cfg.N));
    sum << summary_line("L", format_g17(base.arc_length));
    sum << summary_line("A", format_g17(A));
    sum << summary_line("residual", format_g17(base.residual));
    sum << summary_line("entropy_E", format_g17(functionals::entropy_E(kappa)));
    const std::optional<double> F = functionals::entropy_F(base.profile);
    sum << summary_line("entropy_F", F ? format_g17(*F) : "nan");
    sum << summary_line("width_W", format_g17(functionals::width_W(base.profile)));
    sum << summary_line("instability_coefficient",
                        format_g17(functionals::instability_coefficient(base)));
    write_file(cfg.out_dir + "/summary.txt", sum.str());

    return base.residual <= 1e-8 ? 0 : 2;
}

int cmd_evolve(const ExperimentConfig& cfg) {
    try {
        cfg.validate();
    } catch (const Error& e) {
        std::cerr << "config rejected: " << e.what() << '\n';
        return 1;
    }
    ALProfile base;
    RunOutcome outcome;
    try {
        base = build_base(cfg);
        outcome = run_epsilon(base, cfg.eps.front(), cfg);
    } catch (const InvalidEpsilon& e) {
        std::cerr << "invalid epsilon: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "run failed: " << e.what() << '\n';
        return 1;
    }

    fs::create_directories(cfg.out_dir);
    write_diagnostics_csv(outcome.records, cfg.out_dir + "/diagnostics.csv");

    double dist_circle = 0.0, max_rhs_final = 0.0;
    {
        const PeriodicProfile dot = rhs(outcome.final_state);
        for (double v : outcome.final_state.profile.values)
            dist_circle = std::max(dist_circle, std::abs(v - 1.0));
        for (double v : dot.values) max_rhs_final = std::max(max_rhs_final, std::abs(v));
    }
    std::ostringstream sum;
    sum << summary_line("m", std::to_string(cfg.cls.m));
    sum << summary_line("n", std::to_string(cfg.cls.n));
    sum << summary_line("N", std::to_string(cfg.N));
    sum << summary_line("eps", format_g17(cfg.eps.front()));
    sum << summary_line("frame", cfg.frame == Frame::normalized ? "normalized" : "unnormalized");
    sum << summary_line("verdict", to_string(outcome.verdict));
    sum << summary_line("tau1", outcome.tau1 ? format_g17(*outcome.tau1) : "none");
    sum << summary_line("blow_time",
                        outcome.blow_time ? format_g17(*outcome.blow_time) : "none");
    sum << summary_line("end_time", format_g17(outcome.end_time));
    sum << summary_line("final_dist_to_circle", format_g17(dist_circle));
    sum << summary_line("final_max_rhs", format_g17(max_rhs_final));
    write_file(cfg.out_dir + "/summary.txt", sum.str());

    if (outcome.verdict == Verdict::time_limit) return 3;
    return 0;
}

int cmd_sweep(const ExperimentConfig& cfg) {
    try {
        cfg.validate();
    } catch (const Error& e) {
        std::cerr << "config rejected: " << e.what() << '\n';
        return 1;
    }
    ALProfile base;
    std::vector<SweepRow> rows;
    try {
        base = build_base(cfg);
        rows = run_sweep(base, cfg);
    } catch (const InvalidEpsilon& e) {
        std::cerr << "invalid epsilon: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "sweep failed: " << e.what() << '\n';
        return 1;
    }

    fs::create_directories(cfg.out_dir);
    std::ostringstream os;
    os << "m,n,eps,verdict,tau1,end_time,final_entropy\n";
    for (const SweepRow& row : rows) {
        const DiagnosticsRecord& last = row.outcome.records.back();
        os << cfg.cls.m << ',' << cfg.cls.n << ',' << format_g17(row.eps) << ','
           << to_string(row.outcome.verdict) << ','
           << (row.outcome.tau1 ? format_g17(*row.outcome.tau1) : "") << ','
           << format_g17(row.outcome.end_time) << ',' << format_g17(last.E) << '\n';
    }
    write_file(cfg.out_dir + "/sweep.csv", os.str());
    return sweep_exit_code(rows);
}

int sweep_exit_code(const std::vector<SweepRow>& rows) {
    for (const SweepRow& row : rows)
        if (row.outcome.verdict == Verdict::time_limit) return 3;
    return dichotomy_holds(rows) ? 0 : 4;
}

int cmd_verify(const ExperimentConfig& cfg) {
    try {
        cfg.validate();
    } catch (const Error& e) {
        std::cerr << "config rejected: " << e.what() << '\n';
        return 1;
    }
    verify::Options opt;
    opt.cls = cfg.cls;
    opt.N = cfg.N;
    opt.cfl = cfg.rc.cfl;
    opt.jobs = cfg.jobs;
    opt.scratch_dir = cfg.out_dir;
    const auto results = verify::run_all(opt);
    const int failures = verify::report(results);
    return failures == 0 ? 0 : 5;
}

} // namespace experiment
} // namespace csf
