// experiment.hpp — scenario driver shared by the CLI and the test suites:
// configuration, profile/evolve/sweep execution and deterministic file output.

#ifndef CSF_EXPERIMENT_HPP
#define CSF_EXPERIMENT_HPP

#include "csf/flow.hpp"

#include <string>
#include <vector>

namespace csf {

enum class Scenario { profile, evolve, verify, sweep };

struct ExperimentConfig {
    Scenario scenario = Scenario::profile;
    CurveClass cls{2, 3};
    std::vector<double> eps{0.05};
    int N = 512;
    Frame frame = Frame::normalized;
    RunConfig rc{};       // cfl 0.2, τ_max 20, κ_cap 1e3, conv 1e-7, record 0.01
    std::string out_dir = ".";
    int jobs = 0;         // 0 = available parallelism (sweep only)

    /// Rejects invalid configurations with a diagnostic before any run starts.
    void validate() const;
};

namespace experiment {

struct SweepRow {
    double eps = 0.0;
    RunOutcome outcome;
};

/// Builds the stationary profile for cfg.cls at cfg.N.
ALProfile build_base(const ExperimentConfig& cfg);

/// Normalized (or cfg.frame) run of h_eps under cfg.rc with the class
/// symmetry enforced.
RunOutcome run_epsilon(const ALProfile& base, double eps, const ExperimentConfig& cfg);

/// Independent runs for every eps, executed on a worker pool of cfg.jobs
/// threads; rows come back sorted by eps regardless of scheduling.
std::vector<SweepRow> run_sweep(const ALProfile& base, const ExperimentConfig& cfg);

/// Verdict bookkeeping for the saddle dichotomy: every eps > 0 must converge
/// to the m-circle and every eps < 0 must blow up after touching the origin.
bool dichotomy_holds(const std::vector<SweepRow>& rows);

/// Exit-code contract of the sweep scenario: 3 when any run hit the time
/// limit, 4 when the dichotomy is violated, 0 otherwise.
int sweep_exit_code(const std::vector<SweepRow>& rows);

/// Scenario entry points; exit codes per the CLI contract.
int cmd_profile(const ExperimentConfig& cfg);
int cmd_evolve(const ExperimentConfig& cfg);
int cmd_sweep(const ExperimentConfig& cfg);
int cmd_verify(const ExperimentConfig& cfg);

/// Deterministic 17-significant-digit decimal, shared by all writers.
std::string format_g17(double v);

void write_diagnostics_csv(const std::vector<DiagnosticsRecord>& records,
                           const std::string& path);

} // namespace experiment
} // namespace csf

#endif
