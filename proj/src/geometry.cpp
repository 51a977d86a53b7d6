// geometry.cpp — curve reconstruction, on-axis leaf closure, leaf-area rates.

#include "csf/geometry.hpp"

#include "csf/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace csf::geometry {

CurveSample reconstruct(const PeriodicProfile& support) {
    const PeriodicProfile d1 = spectral::differentiate(support, 1);
    const PeriodicProfile kap = curvature_of(support);
    CurveSample c;
    c.grid = support.grid;
    const int N = support.size();
    c.x.resize(static_cast<size_t>(N));
    c.y.resize(static_cast<size_t>(N));
    c.kappa = kap.values;
    for (int i = 0; i < N; ++i) {
        const double th = support.grid.node(i);
        const double h = support.values[i], hp = d1.values[i];
        c.x[i] = h * std::cos(th) - hp * std::sin(th);
        c.y[i] = h * std::sin(th) + hp * std::cos(th);
    }
    return c;
}

LeafGeometry find_leaf(const PeriodicProfile& support, int n_window) {
    const Grid grid = support.grid;
    const spectral::TrigInterpolant f(support);
    const double window_end =
        n_window > 0 ? 2.0 * grid.m * pi / n_window : grid.period();

    auto y_of = [&](double th) { return f(th) * std::sin(th) + f.derivative(th) * std::cos(th); };
    auto x_of = [&](double th) { return f(th) * std::cos(th) - f.derivative(th) * std::sin(th); };

    const double tip_x = f(0.0);

    // Dense scan for the first transversal sign change of y whose crossing
    // point lies strictly inside the tip radius; the closing intersection of a
    // leaf enclosing the origin sits on the negative x-axis, so only |x| is
    // constrained. The scan runs on spectrally resampled values; only the
    // refinement touches the interpolant.
    const int M = 16 * grid.N;
    const double dth = grid.period() / M;
    const std::vector<double> hu = spectral::resample(support, M);
    const std::vector<double> hpu =
        spectral::resample(spectral::differentiate(support, 1), M);
    double theta_c = -1.0;
    double prev_y = 0.0;
    bool have_prev = false;
    for (int i = 1; i < M; ++i) {
        const double th = i * dth;
        if (th >= window_end) break;
        const double yv = hu[i] * std::sin(th) + hpu[i] * std::cos(th);
        if (have_prev && prev_y != 0.0 && yv != 0.0 &&
            ((prev_y < 0.0) != (yv < 0.0))) {
            double lo = th - dth, hi = th;
            double ylo = prev_y;
            for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double ym = y_of(mid);
                if ((ym < 0.0) == (ylo < 0.0)) {
                    lo = mid;
                    ylo = ym;
                } else {
                    hi = mid;
                }
            }
            const double cand = 0.5 * (lo + hi);
            if (std::abs(x_of(cand)) < std::abs(tip_x) * (1.0 - 1e-9)) {
                theta_c = cand;
                break;
            }
        }
        prev_y = yv;
        have_prev = true;
    }
    if (theta_c <= 0.0)
        throw NoCrossing("find_leaf: no transversal on-axis self-intersection in the window");

    // Sector area (1/2)∫_{−θc}^{θc} h(h+h_θθ): odd modes of the integrand drop
    // over the symmetric interval, cosines integrate in closed form.
    PeriodicProfile w(grid, ProfileKind::field);
    const PeriodicProfile d2 = spectral::differentiate(support, 2);
    for (int i = 0; i < support.size(); ++i)
        w.values[i] = support.values[i] * (support.values[i] + d2.values[i]);
    const spectral::TrigInterpolant wf(w);
    double integral = wf.a[0] * 2.0 * theta_c;
    for (int k = 1; k < static_cast<int>(wf.a.size()); ++k) {
        const double q = grid.wavenumber(k);
        integral += 2.0 * wf.a[k] * std::sin(q * theta_c) / q;
    }

    LeafGeometry leaf;
    leaf.theta_c = theta_c;
    leaf.closing_x = x_of(theta_c);
    leaf.closing_y = y_of(theta_c);
    leaf.area = 0.5 * integral;
    leaf.tip_x = tip_x;
    leaf.tip_y = 0.0;
    return leaf;
}

double leaf_area_rate(const std::vector<DiagnosticsRecord>& records) {
    std::vector<double> t, a;
    for (const DiagnosticsRecord& r : records) {
        if (r.min_h > 0.0 && r.leaf_area) {
            t.push_back(r.time);
            a.push_back(*r.leaf_area);
        }
    }
    if (t.size() < 3)
        throw InsufficientRecords("leaf_area_rate: need at least 3 records with a leaf");
    double st = 0.0, sa = 0.0, stt = 0.0, sta = 0.0;
    const double n = static_cast<double>(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sa += a[i];
        stt += t[i] * t[i];
        sta += t[i] * a[i];
    }
    return (n * sta - st * sa) / (n * stt - st * st);
}

} // namespace csf::geometry
