// functionals.cpp — evaluation of the monitored quantities and the CSV form.

#include "csf/functionals.hpp"

#include "csf/geometry.hpp"
#include "csf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace csf::functionals {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Support profile of a curvature state through (1 + d²/dθ²)^{-1}(1/κ);
// wavenumber 1 is zeroed (absent for the origin-centered symmetric curves
// in scope).
PeriodicProfile support_of_curvature(const PeriodicProfile& kappa) {
    PeriodicProfile recip(kappa.grid, ProfileKind::field);
    for (int i = 0; i < kappa.size(); ++i) {
        if (kappa.values[i] <= 0.0)
            throw NonPositiveCurvature("support_of_curvature: curvature must be positive");
        recip.values[i] = 1.0 / kappa.values[i];
    }
    spectral::Workspace ws(kappa.grid);
    ws.forward(recip.values);
    const int half = kappa.grid.N / 2;
    for (int k = 0; k <= half; ++k) {
        const double q = kappa.grid.wavenumber(k);
        const double den = 1.0 - q * q;
        ws.spectrum()[k] = (std::abs(den) < 1e-9) ? 0.0 : ws.spectrum()[k] / den;
    }
    PeriodicProfile h(kappa.grid, ProfileKind::support);
    ws.inverse(h.values);
    return h;
}

} // namespace

double algebraic_area(const PeriodicProfile& support) {
    const PeriodicProfile d2 = spectral::differentiate(support, 2);
    double s = 0.0;
    for (int i = 0; i < support.size(); ++i)
        s += support.values[i] * (support.values[i] + d2.values[i]);
    return 0.5 * s * support.grid.dtheta();
}

double algebraic_area_parts(const PeriodicProfile& support) {
    const PeriodicProfile d1 = spectral::differentiate(support, 1);
    double s = 0.0;
    for (int i = 0; i < support.size(); ++i)
        s += support.values[i] * support.values[i] - d1.values[i] * d1.values[i];
    return 0.5 * s * support.grid.dtheta();
}

double entropy_E(const PeriodicProfile& curvature) {
    double s = 0.0;
    for (double k : curvature.values) {
        if (k <= 0.0) throw NonPositiveCurvature("entropy_E: curvature must be positive");
        s += std::log(k);
    }
    return s * curvature.grid.dtheta();
}

std::optional<double> entropy_F(const PeriodicProfile& support) {
    double s = 0.0;
    for (double h : support.values) {
        if (h <= 0.0) return std::nullopt;
        s += std::log(h);
    }
    return s * support.grid.dtheta();
}

double u_functional(const PeriodicProfile& curvature) {
    const PeriodicProfile d1 = spectral::differentiate(curvature, 1);
    double s = 0.0;
    for (int i = 0; i < curvature.size(); ++i)
        s += curvature.values[i] * curvature.values[i] - d1.values[i] * d1.values[i];
    return s * curvature.grid.dtheta();
}

double u_functional_literal(const PeriodicProfile& curvature) {
    const PeriodicProfile d2 = spectral::differentiate(curvature, 2);
    double s = 0.0;
    for (int i = 0; i < curvature.size(); ++i)
        s += curvature.values[i] * (curvature.values[i] + d2.values[i]);
    return s * curvature.grid.dtheta();
}

double width_W(const PeriodicProfile& support) {
    const spectral::TrigInterpolant f(support);
    return f(pi / 2.0) + f(-pi / 2.0);
}

namespace {

Extremum refine(const PeriodicProfile& p, bool want_min) {
    const int N = p.size();
    int best = 0;
    for (int i = 1; i < N; ++i) {
        if (want_min ? p.values[i] < p.values[best] : p.values[i] > p.values[best]) best = i;
    }
    const double vm = p.values[(best + N - 1) % N];
    const double v0 = p.values[best];
    const double vp = p.values[(best + 1) % N];
    const double denom = vm - 2.0 * v0 + vp;
    double delta = 0.0;
    if (std::abs(denom) > 1e-300) delta = 0.5 * (vm - vp) / denom;
    delta = std::clamp(delta, -0.5, 0.5);
    Extremum e;
    e.position = p.grid.node(best) + delta * p.grid.dtheta();
    e.value = v0 - 0.25 * (vm - vp) * delta;
    return e;
}

} // namespace

Extremum refined_min(const PeriodicProfile& p) { return refine(p, true); }
Extremum refined_max(const PeriodicProfile& p) { return refine(p, false); }

double instability_coefficient(const ALProfile& base) {
    const PeriodicProfile& h = base.profile;
    const double full = 2.0 * base.cls.m * pi;
    auto avg = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s * h.grid.dtheta() / full;
    };

    std::vector<double> h2(h.values.size()), ih2(h.values.size());
    for (size_t i = 0; i < h.values.size(); ++i) {
        h2[i] = h.values[i] * h.values[i];
        ih2[i] = 1.0 / h2[i];
    }
    const double avg_h2 = avg(h2);
    const double avg_ih2 = avg(ih2);

    // Stationary decomposition avg(1/h²) = avg(h²) − 2 avg(h_θ²) + avg(h_θθ²).
    const PeriodicProfile d1 = spectral::differentiate(h, 1);
    const PeriodicProfile d2 = spectral::differentiate(h, 2);
    std::vector<double> d1sq(h.values.size()), d2sq(h.values.size());
    for (size_t i = 0; i < h.values.size(); ++i) {
        d1sq[i] = d1.values[i] * d1.values[i];
        d2sq[i] = d2.values[i] * d2.values[i];
    }
    const double decomposition = avg_h2 - 2.0 * avg(d1sq) + avg(d2sq);
    if (std::abs(decomposition - avg_ih2) > 1e-8)
        throw Error("instability_coefficient: stationary decomposition check failed "
                    "(profile residual too large?)");

    return full * (avg_h2 - avg_ih2);
}

DiagnosticsRecord record(const FlowState& state, LeafTracking leaf) {
    DiagnosticsRecord r;
    r.time = state.time;

    PeriodicProfile h = (state.representation == Representation::support)
                            ? state.profile
                            : support_of_curvature(state.profile);
    h.kind = ProfileKind::support;
    const PeriodicProfile kappa = (state.representation == Representation::curvature)
                                      ? state.profile
                                      : curvature_of(state.profile);

    r.A = algebraic_area(h);
    r.L = spectral::integrate(h);
    r.E = entropy_E(kappa);
    r.F = entropy_F(h);
    r.u = u_functional(kappa);
    r.W = width_W(h);

    const Extremum hmin = refined_min(h), hmax = refined_max(h);
    const Extremum kmin = refined_min(kappa), kmax = refined_max(kappa);
    r.min_h = hmin.value; r.argmin_h = hmin.position;
    r.max_h = hmax.value; r.argmax_h = hmax.position;
    r.min_k = kmin.value; r.argmin_k = kmin.position;
    r.max_k = kmax.value; r.argmax_k = kmax.position;

    r.zero_count = spectral::count_sign_changes(spectral::differentiate(h, 1));

    if (leaf == LeafTracking::full_area) {
        r.leaf_area = r.A;
    } else if (leaf == LeafTracking::self_intersection) {
        try {
            r.leaf_area = geometry::find_leaf(h).area;
        } catch (const NoCrossing&) {
            r.leaf_area = std::nullopt;
        }
    }

    const PeriodicProfile dot = rhs(state);
    double mr = 0.0;
    for (double v : dot.values) mr = std::max(mr, std::abs(v));
    r.max_rhs = mr;

    r.kappa_phys = (state.frame == Frame::normalized) ? r.max_k * std::exp(state.time)
                                                      : r.max_k;
    return r;
}

std::string csv_header() {
    return "time,A,L,E,F,u,W,min_h,max_h,min_k,max_k,zero_count,leaf_area";
}

std::string to_csv_row(const DiagnosticsRecord& r) {
    std::string row;
    row += fmt17(r.time); row += ',';
    row += fmt17(r.A); row += ',';
    row += fmt17(r.L); row += ',';
    row += fmt17(r.E); row += ',';
    if (r.F) row += fmt17(*r.F);
    row += ',';
    row += fmt17(r.u); row += ',';
    row += fmt17(r.W); row += ',';
    row += fmt17(r.min_h); row += ',';
    row += fmt17(r.max_h); row += ',';
    row += fmt17(r.min_k); row += ',';
    row += fmt17(r.max_k); row += ',';
    row += std::to_string(r.zero_count); row += ',';
    if (r.leaf_area) row += fmt17(*r.leaf_area);
    return row;
}

} // namespace csf::functionals
