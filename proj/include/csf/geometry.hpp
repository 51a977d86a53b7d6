// geometry.hpp — planar reconstruction from the support function, leaf
// detection through the on-axis self-intersection, and leaf-area rates.

#ifndef CSF_GEOMETRY_HPP
#define CSF_GEOMETRY_HPP

#include "csf/functionals.hpp"

#include <vector>

namespace csf {

/// γ(θ) = h(θ)(cos θ, sin θ) + h_θ(θ)(−sin θ, cos θ) sampled at the grid
/// nodes, with the curvature values alongside.
struct CurveSample {
    Grid grid;
    std::vector<double> x, y;
    std::vector<double> kappa;
};

/// The tip-0 leaf: the loop θ ∈ [−θ_c, θ_c] closed by the mirror-symmetric
/// self-intersection on the x-axis.
struct LeafGeometry {
    double theta_c = 0.0;
    double closing_x = 0.0, closing_y = 0.0;
    double area = 0.0;
    double tip_x = 0.0, tip_y = 0.0;
};

namespace geometry {

CurveSample reconstruct(const PeriodicProfile& support);

/// Locates the smallest transversal root θ_c of y(θ) = h sin θ + h_θ cos θ in
/// (0, 2mπ/n_window) whose crossing point lies strictly inside the tip radius,
/// and integrates the sector formula (1/2)∫ h(h+h_θθ) over [−θ_c, θ_c].
/// Throws NoCrossing when the curve is embedded or the leaf has degenerated.
/// n_window defaults to the full period when 0 (callers pass the class n).
LeafGeometry find_leaf(const PeriodicProfile& support, int n_window = 0);

/// Least-squares slope of leaf_area against time over the records with
/// min_h > 0 and a leaf present. Throws InsufficientRecords below 3 points.
double leaf_area_rate(const std::vector<DiagnosticsRecord>& records);

} // namespace geometry
} // namespace csf

#endif
