// oracle.hpp — independent reference computations for the test suite.
//
// Everything here goes through the conserved-energy quadrature of the
// stationary oscillator h'' = 1/h - h (or a plain fixed-step RK4 table), not
// through the library's spectral/shooting machinery, so the two routes can
// check each other.

#ifndef CSF_TESTS_ORACLE_HPP
#define CSF_TESTS_ORACLE_HPP

#include <cstddef>
#include <vector>

namespace oracle {

// Potential V(h) = h²/2 − log h of the stationary oscillator; energy
// E = V(h_max) is conserved along h'' = 1/h − h.
double potential(double h);

// The other root h_min ∈ (0,1) of V(h) = V(h_max), to ~1e-14.
double h_min_of(double h_max);

// Half period ∫ dh/sqrt(2(E−V)) between the turning points, computed with the
// cosine substitution that removes both square-root endpoints (midpoint rule,
// refined until convergence).
double half_period(double h_max);

// ∫ f(h) dθ over one half oscillation, same substitution. f is applied to the
// tabulated h values.
double weighted_half_integral(double h_max, double (*f)(double));

// θ(h) measured from the maximum: ∫_h^{h_max} ds/sqrt(2(E−V(s))).
double theta_of_h(double h_max, double h);

// Inverse of theta_of_h on the descending branch.
double h_at_theta(double h_max, double theta);

// Amplitude whose half period equals m π / n, via bisection over half_period.
double amplitude_for_class(int m, int n);

// Arc length of the full profile: 2 n ∫ h dθ over the half oscillation.
double arc_length(int m, int n, double h_max);

// Fixed-step RK4 table of (h, h') from (h_max, 0); M steps to theta_end.
struct Trajectory {
    std::vector<double> theta, h, hp;
};
Trajectory rk4_table(double h_max, double theta_end, std::size_t steps);

// Shoelace area of the polygon (x_i, y_i), closed last-to-first.
double shoelace(const std::vector<double>& x, const std::vector<double>& y);

// Leaf data of the stationary profile computed purely from the RK4 table:
// closing parameter theta_c (first on-axis crossing of y = h sinθ + h' cosθ
// past the tip) and the polygon area of the loop over [−θ_c, θ_c].
struct LeafOracle {
    double theta_c;
    double closing_x;
    double polygon_area;  // Richardson-extrapolated shoelace
};
LeafOracle leaf_of_class(int m, int n, std::size_t polygon_points = 10000);

} // namespace oracle

#endif
