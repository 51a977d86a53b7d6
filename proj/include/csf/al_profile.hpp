// al_profile.hpp — construction of the Abresch-Langer stationary support
// function h_{m,n} (shooting seed + spectral Newton polish) and the
// area-preserving perturbed initial profile h_eps.

#ifndef CSF_AL_PROFILE_HPP
#define CSF_AL_PROFILE_HPP

#include "csf/grid.hpp"
#include "csf/spectral.hpp"

#include <iosfwd>
#include <utility>

namespace csf {

/// Integer pair (m, n) selecting a stationary curve: rotation index m,
/// leaf count n, coprime, with 1/2 < m/n < 1/sqrt(2).
struct CurveClass {
    int m = 0;
    int n = 0;

    bool admissible() const;
    /// Throws InvalidClass with a diagnostic if not admissible.
    void validate() const;
    /// Half-period target mπ/n of the stationary oscillation.
    double target_half_period() const { return m * pi / n; }
};

/// Amplitude data of one half-oscillation of h'' = 1/h - h.
struct ShootingResult {
    double h_max = 0.0;        // value at the tip θ = 0
    double h_min = 0.0;        // value at the first minimum
    double half_period = 0.0;  // θ-distance from max to min
    double period_residual = 0.0;  // |half_period - mπ/n|, set by solve_class
};

/// The stationary profile on a grid, polished to collocation accuracy.
struct ALProfile {
    CurveClass cls;
    PeriodicProfile profile;   // kind = support
    double arc_length = 0.0;   // L = ∫ h over the full period
    double residual = 0.0;     // max |h (h + h_θθ) - 1|
};

/// h_eps = (1 + (L/mπ) eps + eps²)^{-1/2} (h_{m,n} + eps); algebraic area mπ.
struct PerturbedProfile {
    ALProfile base;
    double epsilon = 0.0;
    double lambda = 1.0;       // the normalizing factor 1 + (L/mπ)eps + eps²
    PeriodicProfile profile;   // kind = support
};

namespace al {

/// Integrates h'' = 1/h - h from (h_max, 0) with an adaptive high-order
/// one-step method until the first θ* > 0 with h'(θ*) = 0 (event located on
/// the dense output). abs/rel tolerance 1e-12.
ShootingResult shoot_half_period(double h_max);

/// Finds h_max with half_period = mπ/n to within tol by a geometric bracket
/// scan on (1, 50] followed by bisection. Throws BracketingFailure when the
/// scan finds no sign change (inadmissible target).
ShootingResult solve_class(const CurveClass& cls, double tol = 1e-10);

/// Same bracket-and-bisect driver for an arbitrary half-period target;
/// exposed so the inadmissible-band behavior is testable directly.
ShootingResult solve_half_period_target(double target, double tol = 1e-10);

/// Full construction: shooting seed sampled onto the grid (even reflection +
/// 2mπ/n-periodic extension), then Newton iteration on the collocation
/// residual h (h + D²h) - 1 restricted to the even n-fold cosine subspace.
ALProfile build_profile(const CurveClass& cls, const Grid& grid);

/// The paper's area-preserving perturbation of the stationary profile.
PerturbedProfile perturb(const ALProfile& base, double eps);

/// First-order variation fields of h_eps and κ_eps in eps:
///   d h_eps/d eps|_0 = 1 - (L/2mπ) h,    d κ_eps/d eps|_0 = κ (L/2mπ - κ).
std::pair<PeriodicProfile, PeriodicProfile> predicted_variations(const ALProfile& base);

/// Text record: one header line "m n N L residual", then N lines "θ value"
/// at 17 significant digits.
void write_profile_text(const ALProfile& p, std::ostream& os);
ALProfile read_profile_text(std::istream& is);

/// Structured-object form of the same record.
std::string profile_to_json(const ALProfile& p);

} // namespace al
} // namespace csf

#endif
