// verify.cpp — the acceptance checklist. Each criterion builds exactly the
// runs it needs (shared through a cache) and checks the pinned tolerances.

#include "csf/verify.hpp"

#include "csf/geometry.hpp"
#include "csf/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

namespace csf::verify {

namespace {

using experiment::SweepRow;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct Cache {
    Options opt;
    ToleranceTable tol{};
    ALProfile base;                      // reference class at opt.N
    std::vector<SweepRow> sweep;         // normalized dichotomy runs
    RunOutcome unnorm_pos, unnorm_neg;   // unnormalized ±0.05
    RunOutcome stationary;               // ε = 0, detection off, τ ∈ [0,1]
    double stationary_sup = 0.0;
    double stationary_u0 = 0.0;

    const RunOutcome& sweep_run(double eps) const {
        for (const SweepRow& r : sweep)
            if (r.eps == eps) return r.outcome;
        throw Error("verify cache: missing sweep run");
    }
};

ExperimentConfig base_config(const Options& opt) {
    ExperimentConfig cfg;
    cfg.cls = opt.cls;
    cfg.N = opt.N;
    cfg.rc.cfl = opt.cfl;
    cfg.rc.time_max = opt.tau_max;
    cfg.jobs = opt.jobs;
    return cfg;
}

Cache build_cache(const Options& opt) {
    Cache c;
    c.opt = opt;
    c.tol = ToleranceTable::for_resolution(opt.N);

    ExperimentConfig cfg = base_config(opt);
    c.base = experiment::build_base(cfg);

    cfg.eps = {-0.05, -0.02, -0.01, 0.01, 0.02, 0.05};
    c.sweep = experiment::run_sweep(c.base, cfg);

    // Unnormalized branches for the area law and the leaf-area rate.
    ExperimentConfig ucfg = cfg;
    ucfg.frame = Frame::unnormalized;
    ucfg.rc.detect_convergence = false;
    ucfg.rc.time_max = 0.45;
    c.unnorm_pos = experiment::run_epsilon(c.base, 0.05, ucfg);
    ucfg.rc.time_max = 0.4999999;
    ucfg.rc.leaf = LeafTracking::self_intersection;
    c.unnorm_neg = experiment::run_epsilon(c.base, -0.05, ucfg);

    // Stationary initial data observed over τ ∈ [0, 1].
    ExperimentConfig scfg = base_config(opt);
    scfg.rc.time_max = 1.0;
    scfg.rc.detect_convergence = false;
    double sup = 0.0;
    const std::vector<double>& ref = c.base.profile.values;
    scfg.rc.on_record = [&sup, &ref](const FlowState& s) {
        for (size_t i = 0; i < ref.size(); ++i)
            sup = std::max(sup, std::abs(s.profile.values[i] - ref[i]));
    };
    c.stationary = experiment::run_epsilon(c.base, 0.0, scfg);
    c.stationary_sup = sup;
    c.stationary_u0 = c.stationary.records.front().u;
    return c;
}

bool check(std::ostringstream& detail, bool ok, const std::string& label) {
    if (!ok) detail << "[" << label << " FAILED] ";
    return ok;
}

// -------------------------------------------------------------------------
// Minimal grid per class from the resolution study (residual <= 1e-8 with the
// off-node check active; the binding constraint is the Fourier tail set by
// min h, not the sample count per fundamental period). Scaled with the
// configured reference resolution.
int class_grid_size(const CurveClass& cls, int reference_n) {
    int at_512 = 512;
    if (cls.m == 3 && cls.n == 5) at_512 = 1536;
    if (cls.m == 4 && cls.n == 7) at_512 = 6144;
    if (cls.m == 5 && cls.n == 8) at_512 = 1280;
    int N = at_512 * reference_n / 512;
    if (N % 2) ++N;
    return std::max(N, 16 * cls.n);
}

// 1. Stationary construction across the test classes.
CriterionResult criterion_profiles(const Cache& c, std::vector<ALProfile>& out_profiles) {
    CriterionResult r{1, "stationary profile construction", true, ""};
    std::ostringstream detail;
    const std::vector<CurveClass> classes{{2, 3}, {3, 5}, {4, 7}, {5, 8}};
    for (const CurveClass& cls : classes) {
        const auto t0 = std::chrono::steady_clock::now();
        ALProfile p = al::build_profile(cls, Grid::make(cls.m, class_grid_size(cls, c.opt.N)));
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double m_pi = cls.m * pi;

        bool ok = true;
        ok &= check(detail, p.residual <= c.tol.profile_residual, "residual");
        const double A = functionals::algebraic_area(p.profile);
        ok &= check(detail, std::abs(A - m_pi) <= c.tol.area_identity, "area");

        double even_err = 0.0;
        const int N = p.profile.size();
        for (int i = 1; i < N; ++i)
            even_err = std::max(even_err,
                                std::abs(p.profile.values[i] - p.profile.values[N - i]));
        ok &= check(detail, even_err <= 1e-10, "evenness");

        const spectral::TrigInterpolant f(p.profile);
        const double cell = 2.0 * cls.m * pi / cls.n;
        double per_err = 0.0;
        for (int j = 0; j < 64; ++j) {
            const double th = j * p.profile.grid.period() / 64.0;
            per_err = std::max(per_err, std::abs(f(th + cell) - f(th)));
        }
        ok &= check(detail, per_err <= 1e-10, "periodicity");

        const double E = functionals::entropy_E(curvature_of(p.profile));
        const auto F = functionals::entropy_F(p.profile);
        ok &= check(detail, F && std::abs(E - *F) <= 1e-10, "E=F");
        ok &= check(detail, secs < 10.0, "runtime");

        detail << "(" << cls.m << "," << cls.n << "): resid=" << fmt(p.residual)
               << " |A-mpi|=" << fmt(std::abs(A - m_pi)) << " t=" << fmt(secs) << "s  ";
        r.pass = r.pass && ok;
        out_profiles.push_back(std::move(p));
    }
    r.detail = detail.str();
    return r;
}

// 2. Exact shrinking-circle oracle in both representations.
CriterionResult criterion_circle(const Cache& c) {
    CriterionResult r{2, "shrinking circle oracle", true, ""};
    const Grid grid = Grid::make(1, c.opt.N);
    RunConfig rc;
    rc.cfl = c.opt.cfl;
    rc.time_max = 0.4;
    rc.detect_convergence = false;
    rc.symmetry = SymmetryClass{1, true};

    FlowState h0;
    h0.profile = PeriodicProfile(grid, ProfileKind::support,
                                 std::vector<double>(static_cast<size_t>(grid.N), 1.0));
    h0.frame = Frame::unnormalized;
    h0.representation = Representation::support;
    const RunOutcome hrun = run(h0, rc);
    const double target_h = std::sqrt(1.0 - 2.0 * 0.4);
    double err_h = 0.0;
    for (double v : hrun.final_state.profile.values)
        err_h = std::max(err_h, std::abs(v - target_h));

    FlowState k0 = h0;
    k0.profile.kind = ProfileKind::curvature;
    k0.representation = Representation::curvature;
    const RunOutcome krun = run(k0, rc);
    const double target_k = 1.0 / target_h;
    double err_k = 0.0;
    for (double v : krun.final_state.profile.values)
        err_k = std::max(err_k, std::abs(v - target_k));

    r.pass = err_h <= 1e-8 && err_k <= 1e-8;
    r.detail = "sup|h-sqrt(1-2t)|=" + fmt(err_h) + " sup|k-1/sqrt(1-2t)|=" + fmt(err_k);
    return r;
}

// 3. Area laws in both frames.
CriterionResult criterion_area_laws(const Cache& c) {
    CriterionResult r{3, "area laws", true, ""};
    const double m_pi = c.opt.cls.m * pi;
    double worst_un = 0.0;
    for (const RunOutcome* run_ptr : {&c.unnorm_pos, &c.unnorm_neg})
        for (const DiagnosticsRecord& rec : run_ptr->records)
            worst_un = std::max(worst_un, std::abs(rec.A - m_pi * (1.0 - 2.0 * rec.time)));
    double worst_norm = 0.0;
    for (double eps : {0.05, -0.05})
        for (const DiagnosticsRecord& rec : c.sweep_run(eps).records)
            worst_norm = std::max(worst_norm, std::abs(rec.A - m_pi));
    r.pass = worst_un <= 1e-6 && worst_norm <= 1e-6;
    r.detail = "max|A-mpi(1-2t)|=" + fmt(worst_un) + " max|A-mpi|=" + fmt(worst_norm);
    return r;
}

// 4. Stationary initial data stays put; u(0) is sharp.
CriterionResult criterion_stationarity(const Cache& c) {
    CriterionResult r{4, "stationary initial data", true, ""};
    const double u_err = std::abs(c.stationary_u0 - 2.0 * c.opt.cls.m * pi);
    r.pass = c.stationary_sup <= c.tol.stationarity_sup && u_err <= 1e-8;
    r.detail = "sup|h-h_mn|=" + fmt(c.stationary_sup) + " |u(0)-2mpi|=" + fmt(u_err);
    return r;
}

// 5. Outward branch: convergence to the m-circle with monotone entropy,
//    the u-bound, and pinned extremum directions.
CriterionResult criterion_outward(const Cache& c) {
    CriterionResult r{5, "outward convergence to the m-circle", true, ""};
    std::ostringstream detail;
    const RunOutcome& o = c.sweep_run(0.05);
    bool ok = check(detail, o.verdict == Verdict::converged_to_circle, "verdict");

    double dist = 0.0;
    for (double v : o.final_state.profile.values) dist = std::max(dist, std::abs(v - 1.0));
    ok &= check(detail, dist <= 1e-3, "final distance");

    double worst_e_up = 0.0, worst_u = -1e300;
    for (size_t i = 0; i + 1 < o.records.size(); ++i)
        worst_e_up = std::max(worst_e_up, o.records[i + 1].E - o.records[i].E);
    for (const DiagnosticsRecord& rec : o.records) worst_u = std::max(worst_u, rec.u);
    ok &= check(detail, worst_e_up <= 1e-8, "entropy monotone");
    const double two_m_pi = 2.0 * c.opt.cls.m * pi;
    ok &= check(detail, worst_u <= two_m_pi + 1e-6, "u bound");

    const double cell = 2.0 * c.opt.cls.m * pi / c.opt.cls.n;
    const double half_cell = 0.5 * cell;
    const double dtheta = o.final_state.profile.grid.dtheta();
    double worst_pin = 0.0;
    for (const DiagnosticsRecord& rec : o.records) {
        worst_pin = std::max(worst_pin, std::abs(std::remainder(rec.argmax_h, cell)));
        worst_pin = std::max(worst_pin,
                             std::abs(std::remainder(rec.argmin_h - half_cell, cell)));
        worst_pin = std::max(worst_pin, std::abs(std::remainder(rec.argmax_k, cell)));
        worst_pin = std::max(worst_pin,
                             std::abs(std::remainder(rec.argmin_k - half_cell, cell)));
    }
    ok &= check(detail, worst_pin <= dtheta, "extrema pinned");

    detail << "tau_end=" << fmt(o.end_time) << " dist=" << fmt(dist)
           << " maxdE=" << fmt(worst_e_up) << " u-2mpi=" << fmt(worst_u - two_m_pi)
           << " pin=" << fmt(worst_pin);
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

// 6. Inward branch: touching, blowup past the curvature budget, F handling,
//    leaf positivity and shrink rate.
CriterionResult criterion_inward(const Cache& c) {
    CriterionResult r{6, "inward touching and blowup", true, ""};
    std::ostringstream detail;
    const RunOutcome& o = c.sweep_run(-0.05);
    bool ok = check(detail, o.verdict == Verdict::touched_origin_then_blowup, "verdict");
    ok &= check(detail, o.tau1.has_value(), "tau1 present");
    ok &= check(detail, o.blow_time.has_value() && std::isfinite(*o.blow_time), "blow time");

    double peak_phys = 0.0;
    for (const DiagnosticsRecord& rec : o.records)
        peak_phys = std::max(peak_phys, rec.kappa_phys);
    ok &= check(detail, peak_phys > 1e3, "curvature blowup");

    bool f_consistent = true;
    for (const DiagnosticsRecord& rec : o.records) {
        if (rec.min_h > 0.0 && !rec.F) f_consistent = false;
        if (rec.min_h <= 0.0 && rec.F) f_consistent = false;
    }
    ok &= check(detail, f_consistent, "F definedness");

    double w_floor = 1e300;
    bool leaf_positive = true;
    int leaf_count = 0;
    for (const DiagnosticsRecord& rec : c.unnorm_neg.records) {
        if (rec.min_h > 0.0) {
            w_floor = std::min(w_floor, rec.W);
            if (rec.leaf_area) {
                ++leaf_count;
                if (*rec.leaf_area <= 0.0) leaf_positive = false;
            }
        }
    }
    ok &= check(detail, leaf_positive && leaf_count >= 3, "leaf positivity");
    ok &= check(detail, w_floor > 0.0, "width floor");

    const double rate = geometry::leaf_area_rate(c.unnorm_neg.records);
    ok &= check(detail, rate <= -pi + 0.05, "leaf rate");

    detail << "tau1=" << (o.tau1 ? fmt(*o.tau1) : "none")
           << " blow=" << (o.blow_time ? fmt(*o.blow_time) : "none")
           << " peak_phys_kappa=" << fmt(peak_phys) << " leaf_rate=" << fmt(rate)
           << " W_floor=" << fmt(w_floor);
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

// 7. Sturm: sign changes of h_θ never increase, starting from 2n.
CriterionResult criterion_sturm(const Cache& c) {
    CriterionResult r{7, "sign-change monotonicity", true, ""};
    std::ostringstream detail;
    bool ok = true;
    const int expected = 2 * c.opt.cls.n;
    const std::vector<std::pair<const char*, const RunOutcome*>> runs{
        {"stationary", &c.stationary},
        {"outward", &c.sweep_run(0.05)},
        {"inward", &c.sweep_run(-0.05)},
        {"inward-unnormalized", &c.unnorm_neg},
    };
    for (const auto& [label, run_ptr] : runs) {
        const auto& recs = run_ptr->records;
        bool monotone = true;
        for (size_t i = 0; i + 1 < recs.size(); ++i)
            if (recs[i + 1].zero_count > recs[i].zero_count) monotone = false;
        const bool starts = !recs.empty() && recs.front().zero_count == expected;
        ok &= check(detail, monotone && starts, label);
        detail << label << ": start=" << recs.front().zero_count
               << " end=" << recs.back().zero_count << "  ";
    }
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

// 8. The (E+F)'' coefficient: sign, finite-difference agreement, Poincaré chain.
CriterionResult criterion_instability(const std::vector<ALProfile>& profiles) {
    CriterionResult r{8, "instability coefficient", true, ""};
    std::ostringstream detail;
    bool ok = true;
    for (const ALProfile& p : profiles) {
        const double coeff = functionals::instability_coefficient(p);

        auto EF = [&](double eps) {
            if (eps == 0.0) {
                return functionals::entropy_E(curvature_of(p.profile)) +
                       *functionals::entropy_F(p.profile);
            }
            const PerturbedProfile pe = al::perturb(p, eps);
            return functionals::entropy_E(curvature_of(pe.profile)) +
                   *functionals::entropy_F(pe.profile);
        };
        const double e = 1e-3;
        const double second = (EF(e) + EF(-e) - 2.0 * EF(0.0)) / (e * e);

        const PeriodicProfile d1 = spectral::differentiate(p.profile, 1);
        double int_d1sq = 0.0;
        for (double v : d1.values) int_d1sq += v * v;
        int_d1sq *= p.profile.grid.dtheta();
        const double bound =
            (2.0 - static_cast<double>(p.cls.n) * p.cls.n / (p.cls.m * p.cls.m)) * int_d1sq;

        bool this_ok = coeff < 0.0;
        this_ok &= std::abs(second - coeff) <= 1e-3 * std::abs(coeff);
        this_ok &= coeff <= bound + 1e-8;
        ok &= check(detail, this_ok, "class");
        detail << "(" << p.cls.m << "," << p.cls.n << "): coeff=" << fmt(coeff)
               << " fd=" << fmt(second) << " bound=" << fmt(bound) << "  ";
    }
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

// 9. First-order expansion fields and the comparison signs at the extrema.
CriterionResult criterion_expansion(const Cache& c) {
    CriterionResult r{9, "perturbation expansions", true, ""};
    std::ostringstream detail;
    const ALProfile& base = c.base;
    const auto [vh, vk] = al::predicted_variations(base);
    const PeriodicProfile kap0 = curvature_of(base.profile);

    auto defect_h = [&](double eps) {
        const PerturbedProfile pe = al::perturb(base, eps);
        double d = 0.0;
        for (int i = 0; i < base.profile.size(); ++i)
            d = std::max(d, std::abs((pe.profile.values[i] - base.profile.values[i]) / eps -
                                     vh.values[i]));
        return d;
    };
    auto defect_k = [&](double eps) {
        const PerturbedProfile pe = al::perturb(base, eps);
        const PeriodicProfile ke = curvature_of(pe.profile);
        double d = 0.0;
        for (int i = 0; i < base.profile.size(); ++i)
            d = std::max(d, std::abs((ke.values[i] - kap0.values[i]) / eps - vk.values[i]));
        return d;
    };

    const double rh = defect_h(5e-3) / defect_h(1e-2);
    const double rk = defect_k(5e-3) / defect_k(1e-2);
    bool ok = check(detail, rh >= 0.4 && rh <= 0.6, "h-field halving");
    ok &= check(detail, rk >= 0.4 && rk <= 0.6, "kappa-field halving");

    const double half_cell = base.cls.m * pi / base.cls.n;
    const spectral::TrigInterpolant h0(base.profile);
    const spectral::TrigInterpolant k0i(kap0);
    bool signs_ok = true;
    for (double eps : {1e-3, -1e-3}) {
        const PerturbedProfile pe = al::perturb(base, eps);
        const spectral::TrigInterpolant he(pe.profile);
        const spectral::TrigInterpolant ke(curvature_of(pe.profile));
        const double sgn = eps > 0 ? 1.0 : -1.0;
        signs_ok &= sgn * (he(0.0) - h0(0.0)) < 0.0;
        signs_ok &= sgn * (he(half_cell) - h0(half_cell)) > 0.0;
        signs_ok &= sgn * (ke(0.0) - k0i(0.0)) < 0.0;
        signs_ok &= sgn * (ke(half_cell) - k0i(half_cell)) > 0.0;
    }
    ok &= check(detail, signs_ok, "comparison signs");

    detail << "ratio_h=" << fmt(rh) << " ratio_k=" << fmt(rk);
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

// 10. Support vs curvature evolution of the same data.
CriterionResult criterion_cross(const Cache& c) {
    CriterionResult r{10, "support/curvature consistency", true, ""};
    std::ostringstream detail;

    auto run_at = [&](int N, double cfl) {
        ExperimentConfig cfg = base_config(c.opt);
        cfg.N = N;
        const ALProfile base = (N == c.opt.N) ? c.base : experiment::build_base(cfg);
        const PerturbedProfile pe = al::perturb(base, 0.05);
        FlowState s;
        s.profile = pe.profile;
        s.frame = Frame::normalized;
        s.representation = Representation::support;
        s.epsilon = 0.05;
        RunConfig rc;
        rc.cfl = cfl;
        rc.time_max = 0.5;
        rc.symmetry = SymmetryClass{c.opt.cls.n, true};
        return cross_check(s, rc);
    };

    const double d_ref = run_at(c.opt.N, c.opt.cfl);
    const double d_fine = run_at(2 * c.opt.N, c.opt.cfl);
    const double d_half_cfl = run_at(c.opt.N, 0.5 * c.opt.cfl);

    bool ok = check(detail, d_ref <= 1e-5, "magnitude");
    const double shrink = d_ref / d_fine;
    ok &= check(detail, shrink >= 8.0, "refinement shrink");

    detail << "D(" << c.opt.N << ")=" << fmt(d_ref) << " D(" << 2 * c.opt.N
           << ")=" << fmt(d_fine) << " shrink=" << fmt(shrink)
           << " D(cfl/2)=" << fmt(d_half_cfl);
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

// 11. The saddle dichotomy over the epsilon sweep.
CriterionResult criterion_sweep(const Cache& c) {
    CriterionResult r{11, "epsilon sweep dichotomy", true, ""};
    std::ostringstream detail;
    const int code = experiment::sweep_exit_code(c.sweep);
    r.pass = code == 0;
    detail << "sweep exit code " << code << ": ";
    for (const SweepRow& row : c.sweep)
        detail << fmt(row.eps) << "->" << to_string(row.outcome.verdict) << "  ";
    r.detail = detail.str();
    return r;
}

// 12. Discrete E'(τ) against −2mπ + u at record midpoints.
CriterionResult criterion_entropy_identity(const Cache& c) {
    CriterionResult r{12, "entropy derivative identity", true, ""};
    const RunOutcome& o = c.sweep_run(0.05);
    const double two_m_pi = 2.0 * c.opt.cls.m * pi;
    double max_slope = 0.0;
    for (size_t i = 0; i + 1 < o.records.size(); ++i) {
        const double dt = o.records[i + 1].time - o.records[i].time;
        if (dt <= 0.0) continue;
        max_slope = std::max(max_slope,
                             std::abs(o.records[i + 1].u - o.records[i].u) / dt);
    }
    double worst = 0.0, bound = 0.0;
    for (size_t i = 0; i + 1 < o.records.size(); ++i) {
        const double dt = o.records[i + 1].time - o.records[i].time;
        if (dt <= 0.0) continue;
        const double lhs = (o.records[i + 1].E - o.records[i].E) / dt;
        const double rhs_mid = -two_m_pi + 0.5 * (o.records[i].u + o.records[i + 1].u);
        const double err = std::abs(lhs - rhs_mid);
        const double tol = 5.0 * dt * dt * max_slope + 1e-8;
        if (err > worst) {
            worst = err;
            bound = tol;
        }
        if (err > tol) r.pass = false;
    }
    r.detail = "worst err=" + fmt(worst) + " (bound there " + fmt(bound) +
               ") max|u'|=" + fmt(max_slope);
    return r;
}

} // namespace

std::vector<CriterionResult> run_all(const Options& opt) {
    const Cache cache = build_cache(opt);
    std::vector<ALProfile> profiles;
    std::vector<CriterionResult> results;
    results.push_back(criterion_profiles(cache, profiles));
    results.push_back(criterion_circle(cache));
    results.push_back(criterion_area_laws(cache));
    results.push_back(criterion_stationarity(cache));
    results.push_back(criterion_outward(cache));
    results.push_back(criterion_inward(cache));
    results.push_back(criterion_sturm(cache));
    results.push_back(criterion_instability(profiles));
    results.push_back(criterion_expansion(cache));
    results.push_back(criterion_cross(cache));
    results.push_back(criterion_sweep(cache));
    results.push_back(criterion_entropy_identity(cache));
    return results;
}

int report(const std::vector<CriterionResult>& results) {
    int failures = 0;
    for (const CriterionResult& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": "
                  << r.name << " — " << r.detail << '\n';
        if (!r.pass) ++failures;
    }
    std::cout << (failures == 0 ? "all criteria passed" : "criteria failed") << " ("
              << results.size() - failures << "/" << results.size() << ")\n";
    return failures;
}

} // namespace csf::verify
