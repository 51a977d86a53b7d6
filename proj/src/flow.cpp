// flow.cpp — RK4 method-of-lines stepping with spectral symmetry/area
// projection, verdict detection, and the cross-representation check.

#include "csf/flow.hpp"

#include "csf/geometry.hpp"
#include "csf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace csf {

namespace {

constexpr double dt_floor = 1e-14;
constexpr double tau1_tol = 1e-4;
constexpr double time_snap = 1e-12;

// Reconstructs the support spectrum from 1/κ by inverting (1 + d²/dθ²).
// Wavenumber 1 (rigid translation) is annihilated by the operator; it is
// absent for the origin-centered symmetric curves in scope and is zeroed.
void invert_support_operator(spectral::Workspace& ws) {
    const int half = ws.grid().N / 2;
    for (int k = 0; k <= half; ++k) {
        const double q = ws.grid().wavenumber(k);
        const double den = 1.0 - q * q;
        ws.spectrum()[k] = (std::abs(den) < 1e-9) ? 0.0 : ws.spectrum()[k] / den;
    }
}

struct StopInfo {
    bool blew = false;
    double time = 0.0;
};

// Owns the per-run scratch and advances one state between record times.
class Core {
public:
    Core(Grid grid, Frame frame, Representation rep, const RunConfig& cfg)
        : grid_(grid), frame_(frame), rep_(rep), cfg_(cfg), ws_(grid) {}

    void set_state(std::vector<double> values, double time) {
        v_ = std::move(values);
        time_ = time;
        refresh_max_kappa();
    }

    const std::vector<double>& values() const { return v_; }
    double time() const { return time_; }
    double max_kappa() const { return max_kappa_; }
    Frame frame() const { return frame_; }
    /// Curvature of the unnormalized curve represented by this state.
    double physical_kappa() const {
        return frame_ == Frame::normalized ? max_kappa_ * std::exp(time_) : max_kappa_;
    }

    FlowState as_state(double epsilon) const {
        FlowState s;
        s.profile = PeriodicProfile(grid_,
                                    rep_ == Representation::support ? ProfileKind::support
                                                                    : ProfileKind::curvature,
                                    v_);
        s.time = time_;
        s.frame = frame_;
        s.representation = rep_;
        s.epsilon = epsilon;
        return s;
    }

    /// Advances to exactly `target`; returns early with blew = true when the
    /// curvature cap trips (physical cap applies once `touched`).
    StopInfo advance_to(double target, bool touched) {
        StopInfo stop;
        while (time_ < target - time_snap) {
            double dt = cfg_.cfl * grid_.dtheta() * grid_.dtheta() / (max_kappa_ * max_kappa_);
            bool last = false;
            if (time_ + dt >= target) {
                dt = target - time_;
                last = true;
            }
            if (dt < dt_floor)
                throw StepUnderflow("flow step: dt underflow (curvature runaway)");

            rk4_step(dt);
            time_ = last ? target : time_ + dt;

            project_and_validate();  // throws CurvatureBlowup on degeneration

            if (max_kappa_ > cfg_.kappa_cap ||
                (touched && frame_ == Frame::normalized &&
                 physical_kappa() > cfg_.kappa_cap)) {
                stop.blew = true;
                stop.time = time_;
                return stop;
            }
        }
        time_ = target;
        return stop;
    }

    /// RHS into `out`; also reports the resolved curvature max of `in`.
    void rhs_eval(const std::vector<double>& in, std::vector<double>& out) {
        const int N = grid_.N;
        out.resize(static_cast<size_t>(N));
        ws_.forward(in);
        ws_.apply_derivative(2);
        ws_.inverse(d2_);
        if (rep_ == Representation::support) {
            for (int i = 0; i < N; ++i) {
                const double speed = in[i] + d2_[i];
                if (speed <= delta_kappa)
                    throw CurvatureBlowup("flow rhs: h + h_theta_theta reached the validity floor");
                const double kap = 1.0 / speed;
                out[i] = (frame_ == Frame::unnormalized) ? -kap : in[i] - kap;
            }
        } else {
            for (int i = 0; i < N; ++i) {
                const double kap = in[i];
                if (kap <= 0.0)
                    throw CurvatureBlowup("flow rhs: curvature lost positivity");
                const double core = kap * kap * (kap + d2_[i]);
                out[i] = (frame_ == Frame::unnormalized) ? core : core - kap;
            }
        }
    }

private:
    void rk4_step(double dt) {
        const int N = grid_.N;
        rhs_eval(v_, k1_);
        stage_.resize(static_cast<size_t>(N));
        for (int i = 0; i < N; ++i) stage_[i] = v_[i] + 0.5 * dt * k1_[i];
        rhs_eval(stage_, k2_);
        for (int i = 0; i < N; ++i) stage_[i] = v_[i] + 0.5 * dt * k2_[i];
        rhs_eval(stage_, k3_);
        for (int i = 0; i < N; ++i) stage_[i] = v_[i] + dt * k3_[i];
        rhs_eval(stage_, k4_);
        for (int i = 0; i < N; ++i)
            v_[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }

    // Symmetry filter, area renormalization (normalized frame), validity and
    // curvature bookkeeping — one spectral pass after each step.
    void project_and_validate() {
        const int N = grid_.N;
        ws_.forward(v_);
        if (cfg_.symmetry.nfold > 1 || cfg_.symmetry.even)
            ws_.apply_symmetry(cfg_.symmetry.nfold, cfg_.symmetry.even);

        if (rep_ == Representation::support) {
            ws_.inverse(v_);
            ws_.apply_derivative(2);
            ws_.inverse(d2_);
            double min_speed = std::numeric_limits<double>::max();
            double area2 = 0.0;  // 2A = Σ h (h + h'') dθ
            for (int i = 0; i < N; ++i) {
                const double speed = v_[i] + d2_[i];
                min_speed = std::min(min_speed, speed);
                area2 += v_[i] * speed;
            }
            area2 *= grid_.dtheta();
            if (min_speed <= delta_kappa)
                throw CurvatureBlowup("flow step: h + h_theta_theta reached the validity floor");
            if (frame_ == Frame::normalized && cfg_.renormalize_area) {
                // A = mπ is an invariant manifold of the normalized flow but is
                // repelling (dA/dτ = 2(A − mπ)); reimpose it each step.
                if (!(area2 > 0.0))
                    throw CurvatureBlowup("flow step: algebraic area lost positivity");
                const double s = std::sqrt(2.0 * grid_.m * pi / area2);
                for (int i = 0; i < N; ++i) v_[i] *= s;
                min_speed *= s;
            }
            max_kappa_ = 1.0 / min_speed;
        } else {
            ws_.inverse(v_);
            double min_k = std::numeric_limits<double>::max();
            for (int i = 0; i < N; ++i) min_k = std::min(min_k, v_[i]);
            if (min_k <= 0.0)
                throw CurvatureBlowup("flow step: curvature lost positivity");
            if (frame_ == Frame::normalized && cfg_.renormalize_area) {
                recip_.resize(static_cast<size_t>(N));
                for (int i = 0; i < N; ++i) recip_[i] = 1.0 / v_[i];
                ws_.forward(recip_);
                invert_support_operator(ws_);
                ws_.inverse(h_);
                double area2 = 0.0;
                for (int i = 0; i < N; ++i) area2 += h_[i] * recip_[i];
                area2 *= grid_.dtheta();
                if (!(area2 > 0.0))
                    throw CurvatureBlowup("flow step: algebraic area lost positivity");
                const double s = std::sqrt(2.0 * grid_.m * pi / area2);
                for (int i = 0; i < N; ++i) v_[i] /= s;
                min_k /= s;
            }
            max_kappa_ = 0.0;
            for (int i = 0; i < N; ++i) max_kappa_ = std::max(max_kappa_, v_[i]);
        }
    }

    void refresh_max_kappa() {
        const int N = grid_.N;
        if (rep_ == Representation::support) {
            ws_.forward(v_);
            ws_.apply_derivative(2);
            ws_.inverse(d2_);
            double min_speed = std::numeric_limits<double>::max();
            for (int i = 0; i < N; ++i) min_speed = std::min(min_speed, v_[i] + d2_[i]);
            if (min_speed <= delta_kappa)
                throw CurvatureBlowup("flow: initial state already degenerate");
            max_kappa_ = 1.0 / min_speed;
        } else {
            double mn = std::numeric_limits<double>::max(), mx = 0.0;
            for (double x : v_) { mn = std::min(mn, x); mx = std::max(mx, x); }
            if (mn <= 0.0) throw CurvatureBlowup("flow: initial curvature not positive");
            max_kappa_ = mx;
        }
    }

    Grid grid_;
    Frame frame_;
    Representation rep_;
    RunConfig cfg_;
    spectral::Workspace ws_;
    std::vector<double> v_, d2_, h_, recip_;
    std::vector<double> k1_, k2_, k3_, k4_, stage_;
    double time_ = 0.0;
    double max_kappa_ = 1.0;
};

double refined_min_of(const std::vector<double>& values, Grid grid) {
    PeriodicProfile p(grid, ProfileKind::support, values);
    return functionals::refined_min(p).value;
}

// Locates the zero crossing of min h̃ inside (lo_time, hi_time] by bisection
// re-integration from the stored record state.
double locate_tau1(Core& scratch, std::vector<double> lo_values, double lo_time,
                   double hi_time, Grid grid) {
    double lo = lo_time, hi = hi_time;
    while (hi - lo > tau1_tol) {
        const double mid = 0.5 * (lo + hi);
        scratch.set_state(lo_values, lo);
        bool negative = false;
        try {
            scratch.advance_to(mid, false);
            negative = refined_min_of(scratch.values(), grid) <= 0.0;
        } catch (const Error&) {
            negative = true;
        }
        if (negative) {
            hi = mid;
        } else {
            lo = mid;
            lo_values = scratch.values();
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::converged_to_circle: return "converged_to_circle";
        case Verdict::converged_to_stationary: return "converged_to_stationary";
        case Verdict::touched_origin_then_blowup: return "touched_origin_then_blowup";
        case Verdict::blowup: return "blowup";
        case Verdict::time_limit: return "time_limit";
    }
    return "unknown";
}

PeriodicProfile curvature_of(const PeriodicProfile& support) {
    PeriodicProfile d2 = spectral::differentiate(support, 2);
    PeriodicProfile kappa(support.grid, ProfileKind::curvature);
    for (int i = 0; i < support.size(); ++i) {
        const double speed = support.values[i] + d2.values[i];
        if (speed <= delta_kappa)
            throw CurvatureBlowup("curvature_of: h + h_theta_theta at or below the validity floor");
        kappa.values[i] = 1.0 / speed;
    }
    return kappa;
}

PeriodicProfile rhs(const FlowState& state) {
    RunConfig cfg;  // defaults; rhs is projection-free
    Core core(state.profile.grid, state.frame, state.representation, cfg);
    std::vector<double> out;
    core.rhs_eval(state.profile.values, out);
    return PeriodicProfile(state.profile.grid, ProfileKind::field, std::move(out));
}

FlowState step(const FlowState& state, const RunConfig& cfg) {
    cfg.validate();
    Core core(state.profile.grid, state.frame, state.representation, cfg);
    core.set_state(state.profile.values, state.time);
    const double dt = cfg.cfl * state.profile.grid.dtheta() * state.profile.grid.dtheta() /
                      (core.max_kappa() * core.max_kappa());
    if (dt < dt_floor) throw StepUnderflow("step: dt underflow");
    core.advance_to(state.time + dt, false);
    FlowState out = core.as_state(state.epsilon);
    return out;
}

FlowState to_normalized(const FlowState& state) {
    if (state.frame != Frame::unnormalized)
        throw InvalidConfig("to_normalized: state already normalized");
    if (!(state.time < 0.5)) throw InvalidTime("to_normalized: need t < 1/2");
    const double shrink = std::sqrt(1.0 - 2.0 * state.time);
    FlowState out = state;
    out.frame = Frame::normalized;
    out.time = -0.5 * std::log(1.0 - 2.0 * state.time);
    const double scale =
        state.representation == Representation::support ? 1.0 / shrink : shrink;
    for (double& v : out.profile.values) v *= scale;
    return out;
}

FlowState from_normalized(const FlowState& state) {
    if (state.frame != Frame::normalized)
        throw InvalidConfig("from_normalized: state not normalized");
    const double shrink = std::exp(-state.time);  // √(1−2t)
    FlowState out = state;
    out.frame = Frame::unnormalized;
    out.time = 0.5 * (1.0 - shrink * shrink);
    const double scale =
        state.representation == Representation::support ? shrink : 1.0 / shrink;
    for (double& v : out.profile.values) v *= scale;
    return out;
}

RunOutcome run(const FlowState& initial, const RunConfig& cfg) {
    cfg.validate();
    const Grid grid = initial.profile.grid;
    RunOutcome out;

    Core core(grid, initial.frame, initial.representation, cfg);
    core.set_state(initial.profile.values, initial.time);
    Core scratch(grid, initial.frame, initial.representation, cfg);  // τ₁ bisection

    bool touched = false;
    std::vector<double> prev_values;
    double prev_time = initial.time;
    double prev_min = std::numeric_limits<double>::max();
    bool have_prev = false;
    size_t rec_idx = 0;

    auto push_record = [&](bool final_slice) {
        FlowState s = core.as_state(initial.epsilon);
        DiagnosticsRecord rec = functionals::record(s, cfg.leaf);
        rec.kappa_phys = core.physical_kappa();
        out.records.push_back(rec);
        if (cfg.on_record) cfg.on_record(s);
        (void)final_slice;
        return rec;
    };

    for (;;) {
        const DiagnosticsRecord rec = push_record(false);

        if (initial.representation == Representation::support && !touched && have_prev &&
            prev_min > 0.0 && rec.min_h <= 0.0) {
            touched = true;
            out.tau1 = locate_tau1(scratch, prev_values, prev_time, core.time(), grid);
            if (core.physical_kappa() > cfg.kappa_cap) {
                out.blow_time = core.time();
                out.verdict = Verdict::touched_origin_then_blowup;
                break;
            }
        }

        if (cfg.detect_convergence && rec.max_rhs < cfg.conv_tol) {
            double dist_circle = 0.0;
            for (double v : core.values())
                dist_circle = std::max(dist_circle, std::abs(v - 1.0));
            out.verdict = dist_circle < 10.0 * cfg.conv_tol ? Verdict::converged_to_circle
                                                            : Verdict::converged_to_stationary;
            break;
        }
        if (core.time() >= cfg.time_max - time_snap) {
            out.verdict = Verdict::time_limit;
            break;
        }

        prev_values = core.values();
        prev_time = core.time();
        prev_min = rec.min_h;
        have_prev = true;
        ++rec_idx;
        const double target =
            std::min(initial.time + static_cast<double>(rec_idx) * cfg.record_every,
                     cfg.time_max);

        StopInfo stop;
        bool valid_state = true;
        try {
            stop = core.advance_to(target, touched);
        } catch (const Error&) {
            // degeneration inside a step; the last completed state is in core
            stop.blew = true;
            stop.time = core.time();
            valid_state = false;
        }
        if (stop.blew) {
            out.blow_time = stop.time;
            out.verdict =
                touched ? Verdict::touched_origin_then_blowup : Verdict::blowup;
            if (valid_state) {
                try {
                    push_record(true);
                } catch (const Error&) {
                    // state too degenerate to diagnose; keep earlier records
                }
            }
            break;
        }
    }

    out.end_time = core.time();
    out.final_state = core.as_state(initial.epsilon);
    return out;
}

double cross_check(const FlowState& initial_support, const RunConfig& cfg) {
    cfg.validate();
    if (initial_support.representation != Representation::support)
        throw InvalidConfig("cross_check: initial state must be a support profile");
    const Grid grid = initial_support.profile.grid;

    Core hcore(grid, initial_support.frame, Representation::support, cfg);
    hcore.set_state(initial_support.profile.values, initial_support.time);
    Core kcore(grid, initial_support.frame, Representation::curvature, cfg);
    kcore.set_state(curvature_of(initial_support.profile).values, initial_support.time);

    double sup = 0.0;
    auto compare = [&]() {
        PeriodicProfile h(grid, ProfileKind::support, hcore.values());
        const PeriodicProfile kap_from_h = curvature_of(h);
        for (int i = 0; i < grid.N; ++i)
            sup = std::max(sup, std::abs(kap_from_h.values[i] - kcore.values()[i]));
    };

    compare();
    size_t rec_idx = 0;
    while (hcore.time() < cfg.time_max - time_snap) {
        ++rec_idx;
        const double target =
            std::min(initial_support.time + static_cast<double>(rec_idx) * cfg.record_every,
                     cfg.time_max);
        const StopInfo s1 = hcore.advance_to(target, false);
        const StopInfo s2 = kcore.advance_to(target, false);
        if (s1.blew || s2.blew)
            throw CurvatureBlowup("cross_check: a branch blew up inside the horizon");
        compare();
    }
    return sup;
}

double leaf_area_rate(const RunOutcome& outcome) {
    return geometry::leaf_area_rate(outcome.records);
}

} // namespace csf
