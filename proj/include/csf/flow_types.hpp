// flow_types.hpp — flow state, run configuration, the four right-hand sides,
// single stepping, and the t ↔ τ normalization maps.

#ifndef CSF_FLOW_TYPES_HPP
#define CSF_FLOW_TYPES_HPP

#include "csf/grid.hpp"

#include <functional>

namespace csf {

enum class Frame { unnormalized, normalized };
enum class Representation { support, curvature };

/// Positivity floor on h + h_θθ below which the support representation is
/// declared singular (κ = 1/(h+h_θθ) no longer trustworthy).
inline constexpr double delta_kappa = 1e-8;

struct FlowState {
    PeriodicProfile profile;
    double time = 0.0;  // t when frame == unnormalized, τ when normalized
    Frame frame = Frame::normalized;
    Representation representation = Representation::support;
    double epsilon = 0.0;  // provenance of the initial data
};

/// Symmetry class of the initial data, enforced spectrally after every step.
/// nfold = 1 with even = false leaves the state untouched.
struct SymmetryClass {
    int nfold = 1;
    bool even = false;
};

enum class LeafTracking { off, self_intersection, full_area };

struct RunConfig {
    double cfl = 0.2;            // dt = cfl Δθ² / max κ²
    double time_max = 20.0;      // horizon in the state's own frame
    double kappa_cap = 1e3;      // blowup threshold on the resolved curvature
    double conv_tol = 1e-7;      // stationarity threshold on max|∂_τ h̃|
    double record_every = 0.01;  // diagnostic sampling interval
    bool detect_convergence = true;
    SymmetryClass symmetry{};
    bool renormalize_area = true;  // normalized frame only
    LeafTracking leaf = LeafTracking::off;
    /// Optional observer invoked with the full state at every record time.
    std::function<void(const FlowState&)> on_record;

    void validate() const {
        if (!(cfl > 0.0) || cfl > 0.5) throw InvalidConfig("RunConfig: need 0 < cfl <= 0.5");
        if (!(time_max > 0.0) || !(kappa_cap > 0.0) || !(record_every > 0.0))
            throw InvalidConfig("RunConfig: horizons and thresholds must be positive");
        if (!(conv_tol > 0.0)) throw InvalidConfig("RunConfig: conv_tol must be positive");
    }
};

/// κ = 1/(h + h_θθ). Throws CurvatureBlowup when min(h + h_θθ) <= delta_kappa.
PeriodicProfile curvature_of(const PeriodicProfile& support);

/// Time-derivative field of the state:
///   (unnormalized, support)   −κ
///   (normalized, support)     −κ̃ + h̃
///   (unnormalized, curvature) κ²(κ_θθ + κ)
///   (normalized, curvature)   κ̃²(κ̃ + κ̃_θθ) − κ̃
PeriodicProfile rhs(const FlowState& state);

/// One explicit classical RK4 step of size cfl Δθ² / max κ², followed by the
/// configured symmetry/area projection. Throws CurvatureBlowup or
/// StepUnderflow from a degenerating state.
FlowState step(const FlowState& state, const RunConfig& cfg);

/// τ = −(1/2) ln(1−2t), h̃ = h/√(1−2t) (κ̃ = κ·√(1−2t) for curvature states).
FlowState to_normalized(const FlowState& state);
/// t = (1/2)(1−e^{−2τ}), h = h̃ e^{−τ}.
FlowState from_normalized(const FlowState& state);

} // namespace csf

#endif
