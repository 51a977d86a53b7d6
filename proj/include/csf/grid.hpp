// grid.hpp — uniform periodic grid on [0, 2mπ] and sampled profiles living on it.

#ifndef CSF_GRID_HPP
#define CSF_GRID_HPP

#include "csf/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace csf {

inline constexpr double pi = std::numbers::pi;

/// Uniform angular grid for 2mπ-periodic functions. Node 0 sits at θ = 0 and
/// the fundamental spatial frequency is 1/m, so admissible wavenumbers are the
/// integer multiples of 1/m up to the Nyquist index N/2.
struct Grid {
    int m = 1;  // rotation index
    int N = 0;  // sample count, even, >= 64

    double period() const { return 2.0 * pi * m; }
    double dtheta() const { return period() / N; }
    double node(int i) const { return i * dtheta(); }
    int nyquist() const { return N / 2; }
    /// Wavenumber of r2c bin k.
    double wavenumber(int k) const { return static_cast<double>(k) / m; }

    bool operator==(const Grid&) const = default;

    static Grid make(int m, int N) {
        if (m < 1) throw InvalidConfig("Grid: rotation index m must be >= 1");
        if (N < 64 || N % 2 != 0) throw InvalidConfig("Grid: N must be even and >= 64");
        return Grid{m, N};
    }
};

enum class ProfileKind { support, curvature, field };

/// Samples of a smooth 2mπ-periodic function on a Grid. Plain value type;
/// all spectral operations treat it as the trigonometric interpolant through
/// the stored values.
struct PeriodicProfile {
    Grid grid;
    ProfileKind kind = ProfileKind::support;
    std::vector<double> values;

    PeriodicProfile() = default;
    PeriodicProfile(Grid g, ProfileKind k)
        : grid(g), kind(k), values(static_cast<size_t>(g.N), 0.0) {}
    PeriodicProfile(Grid g, ProfileKind k, std::vector<double> v)
        : grid(g), kind(k), values(std::move(v)) {
        if (static_cast<int>(values.size()) != g.N)
            throw InvalidConfig("PeriodicProfile: value count does not match grid");
    }

    int size() const { return grid.N; }
    double min() const;
    double max() const;
    bool finite() const;
};

inline double PeriodicProfile::min() const {
    double v = values[0];
    for (double x : values) v = std::min(v, x);
    return v;
}

inline double PeriodicProfile::max() const {
    double v = values[0];
    for (double x : values) v = std::max(v, x);
    return v;
}

inline bool PeriodicProfile::finite() const {
    for (double x : values)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace csf

#endif
