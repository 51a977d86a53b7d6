// flow.hpp — full run control: evolution with verdict detection (convergence,
// origin touching, blowup, time limit) and the support/curvature cross-check.

#ifndef CSF_FLOW_HPP
#define CSF_FLOW_HPP

#include "csf/flow_types.hpp"
#include "csf/functionals.hpp"

#include <optional>
#include <vector>

namespace csf {

enum class Verdict {
    converged_to_circle,
    converged_to_stationary,
    touched_origin_then_blowup,
    blowup,
    time_limit,
};

const char* to_string(Verdict v);

struct RunOutcome {
    Verdict verdict = Verdict::time_limit;
    std::optional<double> tau1;       // first time min h̃ = 0, located to 1e-4
    std::optional<double> blow_time;  // time the curvature cap tripped
    double end_time = 0.0;
    std::vector<DiagnosticsRecord> records;
    FlowState final_state;
};

/// Steps the state to cfg.time_max, recording diagnostics every
/// cfg.record_every. Detects (i) convergence: max|rhs| < conv_tol, classified
/// as the m-circle when ‖h̃−1‖_∞ < 10 conv_tol; (ii) origin touching: sign
/// change of the refined min h̃ between records, timestamped by bisection
/// re-integration; (iii) blowup: resolved curvature above kappa_cap — in the
/// normalized frame, once the state has touched the origin the cap also
/// applies to the unnormalized curvature κ̃·e^τ, which is the quantity that
/// actually blows up at the leaf collapse. All terminations are verdicts.
RunOutcome run(const FlowState& initial, const RunConfig& cfg);

/// Evolves the support equation and, independently, the curvature equation
/// from curvature_of(h0); returns sup over record times of
/// ‖κ_from_h − κ_evolved‖_∞.
double cross_check(const FlowState& initial_support, const RunConfig& cfg);

/// Adapter over geometry::leaf_area_rate for a finished run.
double leaf_area_rate(const RunOutcome& outcome);

} // namespace csf

#endif
