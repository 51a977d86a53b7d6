// oracle_dump.cpp — prints the reference constants the test suite freezes.
// Rerun after any oracle change and refresh the literals in the tests.

#include "oracle.hpp"

#include <cstdio>
#include <numbers>

int main() {
    std::printf("== shoot reference (h_max = 1.5) ==\n");
    std::printf("h_min        = %.15f\n", oracle::h_min_of(1.5));
    std::printf("half_period  = %.15f\n", oracle::half_period(1.5));

    for (auto [m, n] : {std::pair{2, 3}, {3, 5}, {4, 7}, {5, 8}}) {
        const double h_max = oracle::amplitude_for_class(m, n);
        const double h_min = oracle::h_min_of(h_max);
        const double L = oracle::arc_length(m, n, h_max);
        std::printf("== class (%d,%d) ==\n", m, n);
        std::printf("h_max = %.15f\nh_min = %.15f\nL     = %.15f\n", h_max, h_min, L);
        const double mpi = m * std::numbers::pi;
        auto avg = [&](double (*f)(double)) {
            return 2.0 * n * oracle::weighted_half_integral(h_max, f) / (2.0 * mpi);
        };
        const double avg_h2 = avg([](double h) { return h * h; });
        const double avg_ih2 = avg([](double h) { return 1.0 / (h * h); });
        std::printf("instability = %.15f\n", 2.0 * mpi * (avg_h2 - avg_ih2));
        std::printf("h(pi/2)     = %.15f\n", oracle::h_at_theta(h_max, std::numbers::pi / 2.0));
        if (m == 2 && n == 3) {
            const oracle::LeafOracle leaf = oracle::leaf_of_class(m, n);
            std::printf("theta_c     = %.15f\nclosing_x   = %.15f\nleaf_area   = %.15f\n",
                        leaf.theta_c, leaf.closing_x, leaf.polygon_area);
        }
    }
    return 0;
}
