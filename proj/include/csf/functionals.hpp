// functionals.hpp — the monitored quantities: areas, entropies, u, width,
// extrema, sign counts, and the instability coefficient of (E+F)''.

#ifndef CSF_FUNCTIONALS_HPP
#define CSF_FUNCTIONALS_HPP

#include "csf/al_profile.hpp"
#include "csf/flow_types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace csf {

/// One time slice of every monitored functional. Serialized CSV columns (in
/// this order): time, A, L, E, F, u, W, min_h, max_h, min_k, max_k,
/// zero_count, leaf_area; absent optionals are written as empty fields.
struct DiagnosticsRecord {
    double time = 0.0;
    double A = 0.0;  // algebraic area
    double L = 0.0;  // ∫ h over the full period
    double E = 0.0;  // ∫ log κ̃
    std::optional<double> F;  // ∫ log h̃, absent once min h̃ <= 0
    double u = 0.0;  // ∫ κ̃(κ̃ + κ̃_θθ)
    double W = 0.0;  // h̃(π/2) + h̃(−π/2)
    double min_h = 0.0, max_h = 0.0;
    double min_k = 0.0, max_k = 0.0;
    int zero_count = 0;  // sign changes of h̃_θ
    std::optional<double> leaf_area;

    // Not serialized: sub-grid extremum locations and run-control extras.
    double argmin_h = 0.0, argmax_h = 0.0;
    double argmin_k = 0.0, argmax_k = 0.0;
    double max_rhs = 0.0;       // max |∂_t profile| at this slice
    double kappa_phys = 0.0;    // curvature of the unnormalized curve
};

namespace functionals {

/// A(h) = (1/2) ∫ h (h + h_θθ) dθ over the full period.
double algebraic_area(const PeriodicProfile& support);
/// The parts-integrated form (1/2) ∫ (h² − h_θ²); agrees with algebraic_area
/// to quadrature precision.
double algebraic_area_parts(const PeriodicProfile& support);

/// ∫ log κ. Throws NonPositiveCurvature unless κ > 0 pointwise.
double entropy_E(const PeriodicProfile& curvature);

/// ∫ log h when min h > 0, absent otherwise.
std::optional<double> entropy_F(const PeriodicProfile& support);

/// u = ∫ (κ² − κ_θ²), the parts-integrated form of ∫ κ(κ + κ_θθ).
double u_functional(const PeriodicProfile& curvature);
/// Literal form, kept for the two-route consistency check.
double u_functional_literal(const PeriodicProfile& curvature);

/// Width of the tip-0 leaf: h̃(π/2) + h̃(−π/2).
double width_W(const PeriodicProfile& support);

/// Sub-grid extremum by quadratic interpolation through the best node and its
/// neighbors. Returns {position, value}.
struct Extremum { double position = 0.0; double value = 0.0; };
Extremum refined_min(const PeriodicProfile& p);
Extremum refined_max(const PeriodicProfile& p);

/// 2mπ [ avg(h²) − avg(1/h²) ] at ε = 0 — the (E+F)'' coefficient. Also
/// verifies the stationary decomposition avg(1/h²) = avg(h²) − 2 avg(h_θ²)
/// + avg(h_θθ²) to 1e-8 internally.
double instability_coefficient(const ALProfile& base);

/// Bundles every functional for one time slice; leaf_area filled per the
/// tracking mode. Supports both representations (curvature states are
/// reconstructed through (1 + ∂²)^{-1}).
DiagnosticsRecord record(const FlowState& state, LeafTracking leaf = LeafTracking::off);

/// Fixed-order CSV row/header for DiagnosticsRecord.
std::string csv_header();
std::string to_csv_row(const DiagnosticsRecord& r);

} // namespace functionals
} // namespace csf

#endif
