// test_functionals.cpp — closed forms for A, E, F, u, W, extremum refinement,
// the instability coefficient and the diagnostics bundle.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csf/functionals.hpp"
#include "csf/geometry.hpp"
#include "csf/spectral.hpp"

#include "oracle.hpp"

#include <cmath>
#include <sstream>

using namespace csf;
using namespace csf::functionals;

namespace {

constexpr double kHmax23 = 1.933597070920120;
constexpr double kWidth23 = 2.0 * 0.639262158408757;  // 2 h(pi/2), even profile
constexpr double kInstab23 = -4.239681319142564;

ALProfile base23() {
    static ALProfile cached = al::build_profile({2, 3}, Grid::make(2, 512));
    return cached;
}

PeriodicProfile constant_profile(Grid g, double c, ProfileKind kind) {
    return PeriodicProfile(g, kind, std::vector<double>(static_cast<size_t>(g.N), c));
}

} // namespace

TEST_CASE("algebraic area closed forms") {
    const Grid g2 = Grid::make(2, 256);
    CHECK(algebraic_area(constant_profile(g2, 1.0, ProfileKind::support)) ==
          doctest::Approx(2.0 * pi).epsilon(1e-13));

    // wavenumber-1 modes contribute nothing: A(1 + 0.3 cos θ) = π on m = 1
    const Grid g1 = Grid::make(1, 256);
    PeriodicProfile p(g1, ProfileKind::support);
    for (int i = 0; i < g1.N; ++i) p.values[i] = 1.0 + 0.3 * std::cos(g1.node(i));
    CHECK(algebraic_area(p) == doctest::Approx(pi).epsilon(1e-12));

    CHECK(std::abs(algebraic_area(base23().profile) - 2.0 * pi) <= 1e-9);
}

TEST_CASE("the two area routes agree") {
    const Grid g = Grid::make(2, 256);
    PeriodicProfile p(g, ProfileKind::support);
    for (int i = 0; i < g.N; ++i) {
        const double th = g.node(i);
        p.values[i] = 2.0 + 0.4 * std::cos(1.5 * th) + 0.1 * std::sin(2.5 * th);
    }
    CHECK(std::abs(algebraic_area(p) - algebraic_area_parts(p)) <= 1e-10);
    CHECK(std::abs(algebraic_area(base23().profile) -
                   algebraic_area_parts(base23().profile)) <= 1e-10);
}

TEST_CASE("entropies: constants and the degenerate case") {
    const Grid g = Grid::make(2, 256);
    CHECK(entropy_E(constant_profile(g, 1.0, ProfileKind::curvature)) ==
          doctest::Approx(0.0).epsilon(1e-13));
    CHECK(entropy_E(constant_profile(g, 2.5, ProfileKind::curvature)) ==
          doctest::Approx(4.0 * pi * std::log(2.5)).epsilon(1e-13));
    CHECK_THROWS_AS(entropy_E(constant_profile(g, -1.0, ProfileKind::curvature)),
                    NonPositiveCurvature);

    CHECK(*entropy_F(constant_profile(g, 1.0, ProfileKind::support)) ==
          doctest::Approx(0.0).epsilon(1e-13));
    PeriodicProfile dips(g, ProfileKind::support,
                         std::vector<double>(static_cast<size_t>(g.N), 1.0));
    dips.values[17] = -0.1;
    CHECK_FALSE(entropy_F(dips).has_value());
}

TEST_CASE("self-similar identity forces E = F, with the oracle value") {
    const ALProfile p = base23();
    const double E = entropy_E(curvature_of(p.profile));
    const auto F = entropy_F(p.profile);
    REQUIRE(F.has_value());
    CHECK(std::abs(E - *F) <= 1e-10);
    // live oracle: ∫ log h over the period by energy quadrature
    const double oracle_E =
        2.0 * 3 * oracle::weighted_half_integral(oracle::amplitude_for_class(2, 3),
                                                 [](double h) { return std::log(h); });
    CHECK(E == doctest::Approx(oracle_E).epsilon(1e-9));
}

TEST_CASE("u functional closed forms and the stationary bound") {
    const Grid g2 = Grid::make(2, 256);
    CHECK(u_functional(constant_profile(g2, 1.0, ProfileKind::curvature)) ==
          doctest::Approx(4.0 * pi).epsilon(1e-13));

    // κ = 1 + 0.1 cos 2θ on m = 1: u = 2π + 0.01π − 0.04π
    const Grid g1 = Grid::make(1, 256);
    PeriodicProfile k(g1, ProfileKind::curvature);
    for (int i = 0; i < g1.N; ++i) k.values[i] = 1.0 + 0.1 * std::cos(2.0 * g1.node(i));
    CHECK(u_functional(k) == doctest::Approx(2.0 * pi - 0.03 * pi).epsilon(1e-12));

    // at stationarity u = 2mπ exactly
    CHECK(std::abs(u_functional(curvature_of(base23().profile)) - 4.0 * pi) <= 1e-8);

    // parts-integrated and literal routes agree
    CHECK(std::abs(u_functional(k) - u_functional_literal(k)) <= 1e-10);
    const PeriodicProfile kk = curvature_of(base23().profile);
    CHECK(std::abs(u_functional(kk) - u_functional_literal(kk)) <= 1e-10);
}

TEST_CASE("width of circles and the stationary profile") {
    const Grid g = Grid::make(1, 128);
    CHECK(width_W(constant_profile(g, 1.0, ProfileKind::support)) ==
          doctest::Approx(2.0).epsilon(1e-13));

    const ALProfile p = base23();
    CHECK(width_W(p.profile) == doctest::Approx(kWidth23).epsilon(1e-9));
    // even symmetry: W = 2 h(π/2)
    CHECK(width_W(p.profile) ==
          doctest::Approx(2.0 * spectral::eval_at(p.profile, pi / 2.0)).epsilon(1e-12));
}

TEST_CASE("extremum refinement reaches sub-grid accuracy") {
    const Grid g = Grid::make(1, 256);
    PeriodicProfile p(g, ProfileKind::support);
    for (int i = 0; i < g.N; ++i) p.values[i] = 2.0 + std::cos(g.node(i) - 0.3);
    const Extremum mx = refined_max(p);
    CHECK(std::abs(mx.position - 0.3) <= 1e-3);
    CHECK(std::abs(mx.value - 3.0) <= 1e-5);
    const Extremum mn = refined_min(p);
    CHECK(std::abs(mn.position - (0.3 + pi)) <= 1e-3);
    CHECK(std::abs(mn.value - 1.0) <= 1e-5);
}

TEST_CASE("instability coefficient matches the oracle and the finite difference") {
    const ALProfile p = base23();
    const double coeff = instability_coefficient(p);
    CHECK(coeff == doctest::Approx(kInstab23).epsilon(1e-9));
    CHECK(coeff < 0.0);

    auto EF = [&](double eps) {
        const PerturbedProfile pe = al::perturb(p, eps);
        return entropy_E(curvature_of(pe.profile)) + *entropy_F(pe.profile);
    };
    const double e = 1e-3;
    const double second = (EF(e) + EF(-e) - 2.0 * EF(0.0)) / (e * e);
    CHECK(std::abs(second - coeff) <= 1e-3 * std::abs(coeff));
}

TEST_CASE("diagnostics record of the doubled circle") {
    const Grid g = Grid::make(2, 256);
    FlowState s;
    s.profile = constant_profile(g, 1.0, ProfileKind::support);
    s.frame = Frame::normalized;
    s.representation = Representation::support;
    const DiagnosticsRecord r = record(s, LeafTracking::self_intersection);
    CHECK(r.A == doctest::Approx(2.0 * pi).epsilon(1e-12));
    CHECK(r.L == doctest::Approx(4.0 * pi).epsilon(1e-12));
    CHECK(std::abs(r.E) <= 1e-12);
    REQUIRE(r.F.has_value());
    CHECK(std::abs(*r.F) <= 1e-12);
    CHECK(r.u == doctest::Approx(4.0 * pi).epsilon(1e-12));
    CHECK(r.W == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.zero_count == 0);
    CHECK_FALSE(r.leaf_area.has_value());  // embedded circle has no crossing
    CHECK(std::abs(r.max_rhs) <= 1e-12);
}

TEST_CASE("diagnostics record of the stationary state") {
    FlowState s;
    s.profile = base23().profile;
    s.frame = Frame::normalized;
    s.representation = Representation::support;
    const DiagnosticsRecord r = record(s);
    // E' proxy −2mπ + u vanishes at stationarity
    CHECK(std::abs(-4.0 * pi + r.u) <= 1e-8);
    CHECK(r.zero_count == 6);  // 2n
    CHECK(r.max_h == doctest::Approx(kHmax23).epsilon(1e-8));
    CHECK(std::abs(r.argmax_h) <= s.profile.grid.dtheta());
}

TEST_CASE("record reconstructs support data from a curvature state") {
    FlowState s;
    s.profile = curvature_of(base23().profile);
    s.frame = Frame::normalized;
    s.representation = Representation::curvature;
    const DiagnosticsRecord r = record(s);
    CHECK(r.A == doctest::Approx(2.0 * pi).epsilon(1e-8));
    CHECK(r.max_h == doctest::Approx(kHmax23).epsilon(1e-7));
}

TEST_CASE("csv rows carry empty fields for absent optionals") {
    DiagnosticsRecord r;
    r.time = 1.0;
    r.F = std::nullopt;
    r.leaf_area = std::nullopt;
    const std::string row = to_csv_row(r);
    // 13 columns, so 12 commas; F (5th) and leaf (13th) empty
    CHECK(std::count(row.begin(), row.end(), ',') == 12);
    std::stringstream ss(row);
    std::string field;
    int idx = 0;
    bool f_empty = false, leaf_empty = false;
    while (std::getline(ss, field, ',')) {
        if (idx == 4) f_empty = field.empty();
        if (idx == 12) leaf_empty = field.empty();
        ++idx;
    }
    CHECK(f_empty);
    // trailing empty field after the last comma
    CHECK(row.back() == ',');
    (void)leaf_empty;

    r.F = 1.5;
    r.leaf_area = 2.5;
    const std::string full = to_csv_row(r);
    CHECK(full.find(",1.5,") != std::string::npos);
    CHECK(full.substr(full.size() - 3) == "2.5");

    CHECK(csv_header() ==
          "time,A,L,E,F,u,W,min_h,max_h,min_k,max_k,zero_count,leaf_area");
}
