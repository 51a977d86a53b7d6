// test_al_profile.cpp — shooting, class solving, Newton polish, perturbation.
//
// Frozen constants come from the energy-quadrature oracle (see oracle_dump);
// several checks also compare against the oracle live so the two routes stay
// independent.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csf/al_profile.hpp"
#include "csf/flow_types.hpp"
#include "csf/functionals.hpp"
#include "csf/spectral.hpp"

#include "oracle.hpp"

#include <cmath>
#include <sstream>

using namespace csf;

namespace {

// Oracle constants, frozen from oracle_dump.
constexpr double kShootHmin15 = 0.574281768622568;
constexpr double kShootT15 = 2.181062232605288;
constexpr double kHmax23 = 1.933597070920120;
constexpr double kL23 = 14.935492552329109;

ALProfile build23(int N = 512) { return al::build_profile({2, 3}, Grid::make(2, N)); }

} // namespace

TEST_CASE("admissibility of the (m,n) band") {
    CHECK(CurveClass{2, 3}.admissible());
    CHECK(CurveClass{3, 5}.admissible());
    CHECK(CurveClass{4, 7}.admissible());
    CHECK(CurveClass{5, 8}.admissible());
    CHECK_FALSE(CurveClass{1, 2}.admissible());  // m/n = 1/2 excluded
    CHECK_FALSE(CurveClass{3, 4}.admissible());  // above 1/sqrt(2)
    CHECK_FALSE(CurveClass{2, 4}.admissible());  // not coprime
    CHECK_FALSE(CurveClass{1, 1}.admissible());
    CHECK_THROWS_AS(al::solve_class({1, 2}), InvalidClass);
}

TEST_CASE("harmonic limit: tiny amplitude gives half period pi/sqrt(2)") {
    const ShootingResult r = al::shoot_half_period(1.0 + 1e-6);
    CHECK(std::abs(r.half_period - pi / std::sqrt(2.0)) <= 1e-4);
}

TEST_CASE("energy conservation along the shot trajectory") {
    const ShootingResult r = al::shoot_half_period(1.5);
    auto energy = [](double h) { return 0.5 * h * h - std::log(h); };
    const double e0 = energy(r.h_max);
    const double e1 = energy(r.h_min);  // h' = 0 at both ends
    CHECK(std::abs(e0 - e1) <= 1e-10 * std::abs(e0));
}

TEST_CASE("shoot at h_max = 1.5 against the quadrature oracle") {
    const ShootingResult r = al::shoot_half_period(1.5);
    CHECK(std::abs(r.h_min - kShootHmin15) <= 1e-8);
    CHECK(std::abs(r.half_period - kShootT15) <= 1e-8);
    // the same two quantities computed live by the oracle
    CHECK(std::abs(r.h_min - oracle::h_min_of(1.5)) <= 1e-8);
    CHECK(std::abs(r.half_period - oracle::half_period(1.5)) <= 1e-8);
}

TEST_CASE("solve_class (2,3): target period and frozen amplitude") {
    const ShootingResult r = al::solve_class({2, 3});
    CHECK(std::abs(r.half_period - 2.0 * pi / 3.0) <= 1e-9);
    CHECK(r.period_residual <= 1e-9);
    CHECK(std::abs(r.h_max - kHmax23) <= 1e-8);
}

TEST_CASE("bracket search fails outside the admissible period band") {
    // Below the infimum pi/2: the scan exhausts the amplitude cap.
    CHECK_THROWS_AS(al::solve_half_period_target(1.2), BracketingFailure);
    // Above the supremum pi/sqrt(2): no bracket exists at all.
    CHECK_THROWS_AS(al::solve_half_period_target(2.3), BracketingFailure);
}

TEST_CASE("build_profile (2,3): defining equation, area, symmetry, arc length") {
    const ALProfile p = build23();
    CHECK(p.residual <= 1e-8);

    const double A = functionals::algebraic_area(p.profile);
    CHECK(std::abs(A - 2.0 * pi) <= 1e-9);

    // even about theta = 0 at node level
    const int N = p.profile.size();
    double even_err = 0.0;
    for (int i = 1; i < N; ++i)
        even_err = std::max(even_err,
                            std::abs(p.profile.values[i] - p.profile.values[N - i]));
    CHECK(even_err <= 1e-10);

    // 2mpi/n periodicity through the interpolant
    const spectral::TrigInterpolant f(p.profile);
    double per_err = 0.0;
    for (int j = 0; j < 50; ++j) {
        const double th = 0.08 * j;
        per_err = std::max(per_err, std::abs(f(th + 4.0 * pi / 3.0) - f(th)));
    }
    CHECK(per_err <= 1e-10);

    CHECK(std::abs(p.arc_length - kL23) <= 1e-9);
    CHECK(std::abs(p.arc_length -
                   oracle::arc_length(2, 3, oracle::amplitude_for_class(2, 3))) <= 1e-8);

    // max at the tip, min at mpi/n, strictly decreasing between
    CHECK(p.profile.values[0] == doctest::Approx(kHmax23).epsilon(1e-8));
    const double cell_end = 2.0 * pi / 3.0;
    double prev = p.profile.values[0];
    for (int i = 1; p.profile.grid.node(i) < cell_end; ++i) {
        CHECK(p.profile.values[i] < prev);
        prev = p.profile.values[i];
    }
}

TEST_CASE("build_profile preconditions") {
    CHECK_THROWS_AS(al::build_profile({2, 3}, Grid::make(1, 512)), InvalidConfig);
    CHECK_THROWS_AS(al::build_profile({3, 5}, Grid::make(3, 64)), InvalidConfig);
}

TEST_CASE("sharper classes build at their study resolutions") {
    // arc lengths frozen from the quadrature oracle
    struct Row { int m, n, N; double L; };
    for (const Row& row : {Row{3, 5, 1536, 30.503082832405827},
                           Row{5, 8, 1280, 44.992138889271203}}) {
        const ALProfile p = al::build_profile({row.m, row.n}, Grid::make(row.m, row.N));
        CHECK(p.residual <= 1e-8);
        CHECK(std::abs(p.arc_length - row.L) <= 1e-8);
        CHECK(std::abs(functionals::algebraic_area(p.profile) - row.m * pi) <= 1e-9);
    }
}

TEST_CASE("under-resolved grids are rejected, not silently accepted") {
    // at N = 512 the (5,8) truncation aliases back into the collocation
    // subspace; the off-node residual check has to catch it
    CHECK_THROWS_AS(al::build_profile({5, 8}, Grid::make(5, 512)), NewtonDivergence);
    CHECK_THROWS_AS(al::build_profile({4, 7}, Grid::make(4, 1024)), NewtonDivergence);
}

TEST_CASE("self-similar identity kappa = h") {
    const ALProfile p = build23();
    const PeriodicProfile kap = curvature_of(p.profile);
    double err = 0.0;
    for (int i = 0; i < p.profile.size(); ++i)
        err = std::max(err, std::abs(kap.values[i] - p.profile.values[i]));
    CHECK(err <= 1e-8);
}

TEST_CASE("perturb: identity at eps = 0 and exact area preservation") {
    const ALProfile p = build23();
    const PerturbedProfile p0 = al::perturb(p, 0.0);
    for (int i = 0; i < p.profile.size(); ++i)
        CHECK(p0.profile.values[i] == doctest::Approx(p.profile.values[i]).epsilon(1e-15));

    for (double eps : {0.05, -0.05, 0.2, -0.2}) {
        const PerturbedProfile pe = al::perturb(p, eps);
        CHECK(std::abs(functionals::algebraic_area(pe.profile) - 2.0 * pi) <= 1e-10);
    }
}

TEST_CASE("perturb rejects epsilon that destroys positivity") {
    const ALProfile p = build23();
    CHECK_THROWS_AS(al::perturb(p, -0.32), InvalidEpsilon);  // min h ≈ 0.3132
    CHECK_NOTHROW(al::perturb(p, -0.31));
}

TEST_CASE("first variation field and Richardson halving") {
    const ALProfile p = build23();
    const auto [vh, vk] = al::predicted_variations(p);

    auto defect = [&](double eps) {
        const PerturbedProfile pe = al::perturb(p, eps);
        double d = 0.0;
        for (int i = 0; i < p.profile.size(); ++i)
            d = std::max(d, std::abs((pe.profile.values[i] - p.profile.values[i]) / eps -
                                     vh.values[i]));
        return d;
    };
    const double d1 = defect(1e-2), d2 = defect(5e-3);
    CHECK(d2 / d1 >= 0.4);
    CHECK(d2 / d1 <= 0.6);

    // variation field values at the tip from the frozen constants
    const double c = kL23 / (4.0 * pi);
    CHECK(vh.values[0] == doctest::Approx(1.0 - c * kHmax23).epsilon(1e-8));
    CHECK(vk.values[0] == doctest::Approx(kHmax23 * (c - kHmax23)).epsilon(1e-8));

    // sign structure of the h-variation: negative at the tip, positive at the waist
    CHECK(vh.values[0] < 0.0);
    CHECK(spectral::eval_at(vh, 2.0 * pi / 3.0) > 0.0);

    // ∫ v_kappa / h = ∫ (L/2mpi − h) = 0
    PeriodicProfile ratio(p.profile.grid, ProfileKind::field);
    for (int i = 0; i < p.profile.size(); ++i)
        ratio.values[i] = vk.values[i] / p.profile.values[i];
    CHECK(std::abs(spectral::integrate(ratio)) <= 1e-10);
}

TEST_CASE("comparison signs at the extrema flip with the sign of eps") {
    const ALProfile p = build23();
    const spectral::TrigInterpolant h0(p.profile);
    const spectral::TrigInterpolant k0(curvature_of(p.profile));
    const double waist = 2.0 * pi / 3.0;
    for (double eps : {1e-3, -1e-3}) {
        const PerturbedProfile pe = al::perturb(p, eps);
        const spectral::TrigInterpolant he(pe.profile);
        const spectral::TrigInterpolant ke(curvature_of(pe.profile));
        const double s = eps > 0 ? 1.0 : -1.0;
        CHECK(s * (he(0.0) - h0(0.0)) < 0.0);
        CHECK(s * (he(waist) - h0(waist)) > 0.0);
        CHECK(s * (ke(0.0) - k0(0.0)) < 0.0);
        CHECK(s * (ke(waist) - k0(waist)) > 0.0);
    }
}

TEST_CASE("profile text record round-trips at 17 significant digits") {
    const ALProfile p = build23(256);
    std::stringstream ss;
    al::write_profile_text(p, ss);
    const ALProfile q = al::read_profile_text(ss);
    CHECK(q.cls.m == p.cls.m);
    CHECK(q.cls.n == p.cls.n);
    CHECK(q.arc_length == p.arc_length);
    CHECK(q.residual == p.residual);
    for (int i = 0; i < p.profile.size(); ++i)
        CHECK(q.profile.values[i] == p.profile.values[i]);
}

TEST_CASE("json export carries the same record") {
    const ALProfile p = build23(256);
    const std::string j = al::profile_to_json(p);
    CHECK(j.find("\"m\": 2") != std::string::npos);
    CHECK(j.find("\"n\": 3") != std::string::npos);
    CHECK(j.find("arc_length") != std::string::npos);
}
