// al_profile.cpp — shooting construction and Newton polish of the stationary
// profile, plus the perturbation and export formats.

#include "csf/al_profile.hpp"

#include <boost/numeric/odeint.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace csf {

bool CurveClass::admissible() const {
    if (m < 1 || n < 1) return false;
    if (std::gcd(m, n) != 1) return false;
    const double ratio = static_cast<double>(m) / n;
    return ratio > 0.5 && ratio < 1.0 / std::sqrt(2.0);
}

void CurveClass::validate() const {
    if (!admissible()) {
        std::ostringstream os;
        os << "inadmissible class (" << m << "," << n
           << "): need gcd(m,n)=1 and 1/2 < m/n < 1/sqrt(2)";
        throw InvalidClass(os.str());
    }
}

namespace al {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;  // (h, h')

void pendulum_rhs(const State& y, State& dydt, double /*theta*/) {
    dydt[0] = y[1];
    dydt[1] = 1.0 / y[0] - y[0];
}

constexpr double ode_tol = 1e-12;
constexpr double bracket_cap = 50.0;  // H_cap for the amplitude scan

using Dopri5 = odeint::runge_kutta_dopri5<State>;
using DenseStepper =
    odeint::dense_output_runge_kutta<odeint::controlled_runge_kutta<Dopri5>>;

DenseStepper make_stepper() {
    return odeint::make_dense_output(ode_tol, ode_tol, Dopri5());
}

} // namespace

ShootingResult shoot_half_period(double h_max) {
    if (!(h_max > 1.0))
        throw IntegrationFailure("shoot_half_period: need h_max > 1");

    auto stepper = make_stepper();
    State y{h_max, 0.0};
    stepper.initialize(y, 0.0, 1e-4);

    // h' < 0 immediately after θ = 0 (h'' (0) = 1/h_max - h_max < 0); march
    // until h' crosses back to 0 and locate the event on the dense output.
    const double theta_cap = 100.0;
    double theta_lo = 0.0;
    for (;;) {
        const double t0 = stepper.current_time();
        stepper.do_step(pendulum_rhs);
        const double t1 = stepper.current_time();
        if (t1 <= t0 || t1 - t0 < 1e-15)
            throw IntegrationFailure("shoot_half_period: step controller underflow");
        if (t1 > theta_cap)
            throw IntegrationFailure("shoot_half_period: no turning point found");
        const State& cur = stepper.current_state();
        if (t0 > 0.0 && cur[1] >= 0.0) {
            theta_lo = t0;
            break;
        }
    }

    double lo = theta_lo, hi = stepper.current_time();
    State tmp;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        stepper.calc_state(mid, tmp);
        if (tmp[1] < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double theta_star = 0.5 * (lo + hi);
    stepper.calc_state(theta_star, tmp);

    ShootingResult r;
    r.h_max = h_max;
    r.h_min = tmp[0];
    r.half_period = theta_star;
    r.period_residual = 0.0;
    return r;
}

ShootingResult solve_half_period_target(double target, double tol) {
    // half_period → π/sqrt(2) as h_max → 1+ and decreases toward π/2, so scan
    // geometrically for the first amplitude past the target.
    double prev = 1.0 + 1e-7;
    double prev_T = shoot_half_period(prev).half_period;
    if (prev_T < target)
        throw BracketingFailure("solve_class: target above the small-amplitude period");

    double cur = 1.5;
    double cur_T = 0.0;
    bool bracketed = false;
    while (cur <= bracket_cap) {
        try {
            cur_T = shoot_half_period(cur).half_period;
        } catch (const IntegrationFailure&) {
            break;  // amplitude too extreme for the tolerances; scan is over
        }
        if (cur_T < target) {
            bracketed = true;
            break;
        }
        prev = cur;
        prev_T = cur_T;
        cur *= 1.5;
    }
    if (!bracketed)
        throw BracketingFailure("solve_class: no bracket below H_cap = 50");

    double lo = prev, hi = cur;  // T(lo) >= target >= T(hi)
    ShootingResult best;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        best = shoot_half_period(mid);
        if (std::abs(best.half_period - target) <= tol && it > 4) break;
        if (best.half_period > target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15 * hi) break;
    }
    best.period_residual = std::abs(best.half_period - target);
    return best;
}

ShootingResult solve_class(const CurveClass& cls, double tol) {
    cls.validate();
    return solve_half_period_target(cls.target_half_period(), tol);
}

namespace {

// Samples the shot trajectory at the grid nodes folded into [0, mπ/n] by
// evenness and 2mπ/n-periodicity.
std::vector<double> sample_seed(const CurveClass& cls, const Grid& grid, double h_max) {
    const double cell = 2.0 * cls.m * pi / cls.n;  // fundamental period
    const double half = 0.5 * cell;
    std::vector<double> folded(static_cast<size_t>(grid.N));
    for (int i = 0; i < grid.N; ++i) {
        double u = std::fmod(grid.node(i), cell);
        if (u > half) u = cell - u;
        folded[i] = u;
    }
    std::vector<double> sorted = folded;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    auto stepper = make_stepper();
    State y{h_max, 0.0};
    stepper.initialize(y, 0.0, 1e-4);
    std::vector<double> value_at(sorted.size());
    State tmp;
    size_t j = 0;
    while (j < sorted.size() && sorted[j] <= 1e-14) {
        value_at[j] = h_max;  // the tip itself; dense output starts after a step
        ++j;
    }
    while (j < sorted.size()) {
        if (sorted[j] <= stepper.current_time()) {
            stepper.calc_state(sorted[j], tmp);
            value_at[j] = tmp[0];
            ++j;
            continue;
        }
        stepper.do_step(pendulum_rhs);
    }

    std::vector<double> out(static_cast<size_t>(grid.N));
    for (int i = 0; i < grid.N; ++i) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), folded[i]);
        out[i] = value_at[static_cast<size_t>(it - sorted.begin())];
    }
    return out;
}

// Dense linear solve with partial pivoting; K is ~N/(2n), small.
std::vector<double> solve_dense(std::vector<double> A, std::vector<double> rhs, int K) {
    for (int col = 0; col < K; ++col) {
        int piv = col;
        for (int r = col + 1; r < K; ++r)
            if (std::abs(A[r * K + col]) > std::abs(A[piv * K + col])) piv = r;
        if (std::abs(A[piv * K + col]) < 1e-300)
            throw NewtonDivergence("build_profile: singular Newton system");
        if (piv != col) {
            for (int c = 0; c < K; ++c) std::swap(A[col * K + c], A[piv * K + c]);
            std::swap(rhs[col], rhs[piv]);
        }
        const double d = A[col * K + col];
        for (int r = col + 1; r < K; ++r) {
            const double f = A[r * K + col] / d;
            if (f == 0.0) continue;
            for (int c = col; c < K; ++c) A[r * K + c] -= f * A[col * K + c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(static_cast<size_t>(K));
    for (int r = K - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < K; ++c) s -= A[r * K + c] * x[c];
        x[r] = s / A[r * K + r];
    }
    return x;
}

} // namespace

ALProfile build_profile(const CurveClass& cls, const Grid& grid) {
    cls.validate();
    if (grid.m != cls.m)
        throw InvalidConfig("build_profile: grid.m must equal class m");
    if (grid.N < 16 * cls.n)
        throw InvalidConfig("build_profile: need at least 16 samples per fundamental period");

    const ShootingResult shot = solve_class(cls, 1e-10);
    PeriodicProfile h(grid, ProfileKind::support, sample_seed(cls, grid, shot.h_max));
    // The event-location mismatch leaves a small component outside the even
    // n-fold subspace that Newton cannot correct; drop it before iterating.
    h = spectral::project_symmetric(h, cls.n, true);

    // Newton on R(h) = h (h + D²h) - 1 in the even cosine subspace with
    // wavenumber indices k = j n (the symmetry class of the profile; the
    // rotation zero mode is excluded by construction).
    const int n = cls.n;
    const int K = grid.nyquist() / n + 1;
    spectral::Workspace ws(grid);

    std::vector<double> theta(static_cast<size_t>(grid.N));
    for (int i = 0; i < grid.N; ++i) theta[i] = grid.node(i);

    auto cos_coeffs = [&](const std::vector<double>& vals, std::vector<double>& out) {
        ws.forward(vals);
        out.resize(static_cast<size_t>(K));
        for (int j = 0; j < K; ++j) {
            const int k = j * n;
            const double re = ws.spectrum()[k].real();
            out[j] = (k == 0 || k == grid.nyquist()) ? re / grid.N : 2.0 * re / grid.N;
        }
    };

    std::vector<double> hpp, R(static_cast<size_t>(grid.N)), r;
    std::vector<double> jac(static_cast<size_t>(K) * K), col, Jv(static_cast<size_t>(grid.N));
    double residual = 0.0;
    bool converged = false;
    double best_residual = std::numeric_limits<double>::max();
    int stalled = 0;

    for (int iter = 0; iter < 40; ++iter) {
        ws.forward(h.values);
        ws.apply_derivative(2);
        ws.inverse(hpp);
        residual = 0.0;
        for (int i = 0; i < grid.N; ++i) {
            R[i] = h.values[i] * (h.values[i] + hpp[i]) - 1.0;
            residual = std::max(residual, std::abs(R[i]));
        }
        if (!std::isfinite(residual))
            throw NewtonDivergence("build_profile: residual not finite");
        if (residual <= 1e-13) {
            converged = true;
            break;
        }
        // D² amplifies rounding by (N/2m)², so the evaluable floor sits near
        // 1e-11 at N = 512; stop after two iterations without real progress.
        stalled = (residual > 0.9 * best_residual) ? stalled + 1 : 0;
        if (stalled >= 2) {
            converged = residual <= 1e-8;
            break;
        }
        if (residual > 100.0 * best_residual)
            throw NewtonDivergence("build_profile: residual diverged");
        best_residual = std::min(best_residual, residual);

        cos_coeffs(R, r);
        for (int j = 0; j < K; ++j) {
            const double q = grid.wavenumber(j * n);
            for (int i = 0; i < grid.N; ++i) {
                const double v = std::cos(q * theta[i]);
                Jv[i] = v * (h.values[i] + hpp[i]) + h.values[i] * v * (1.0 - q * q);
            }
            cos_coeffs(Jv, col);
            for (int row = 0; row < K; ++row) jac[static_cast<size_t>(row) * K + j] = col[row];
        }
        std::vector<double> neg_r = r;
        for (double& v : neg_r) v = -v;
        const std::vector<double> dc = solve_dense(jac, neg_r, K);
        for (int j = 0; j < K; ++j) {
            const double q = grid.wavenumber(j * n);
            for (int i = 0; i < grid.N; ++i) h.values[i] += dc[j] * std::cos(q * theta[i]);
        }
    }
    if (!converged && !(residual <= 1e-8))
        throw NewtonDivergence("build_profile: Newton failed to reach residual 1e-8 "
                               "(grid resolution too small for this class?)");

    // Off-node residual on a doubled grid: when N is a multiple of n the
    // leading truncation aliases back into the collocation subspace and the
    // nodal residual alone can look spuriously small.
    {
        const int M = 2 * grid.N;
        const std::vector<double> hf = spectral::resample(h, M);
        const std::vector<double> d2f =
            spectral::resample(spectral::differentiate(h, 2), M);
        for (int i = 0; i < M; ++i)
            residual = std::max(residual, std::abs(hf[i] * (hf[i] + d2f[i]) - 1.0));
        if (!(residual <= 1e-8))
            throw NewtonDivergence(
                "build_profile: off-node residual above 1e-8 "
                "(grid resolution too small for this class?)");
    }

    ALProfile out;
    out.cls = cls;
    out.profile = std::move(h);
    out.residual = residual;
    out.arc_length = spectral::integrate(out.profile);
    return out;
}

PerturbedProfile perturb(const ALProfile& base, double eps) {
    const double m_pi = base.cls.m * pi;
    const double lambda = 1.0 + (base.arc_length / m_pi) * eps + eps * eps;
    if (!(lambda > 0.0))
        throw InvalidEpsilon("perturb: normalization factor is not positive");
    if (!(base.profile.min() + eps > 0.0))
        throw InvalidEpsilon("perturb: h_{m,n} + eps must stay positive");

    PerturbedProfile p;
    p.base = base;
    p.epsilon = eps;
    p.lambda = lambda;
    p.profile = PeriodicProfile(base.profile.grid, ProfileKind::support);
    const double s = 1.0 / std::sqrt(lambda);
    for (int i = 0; i < p.profile.size(); ++i)
        p.profile.values[i] = s * (base.profile.values[i] + eps);
    return p;
}

std::pair<PeriodicProfile, PeriodicProfile> predicted_variations(const ALProfile& base) {
    const double c = base.arc_length / (2.0 * base.cls.m * pi);
    PeriodicProfile vh(base.profile.grid, ProfileKind::field);
    PeriodicProfile vk(base.profile.grid, ProfileKind::field);
    for (int i = 0; i < base.profile.size(); ++i) {
        const double h = base.profile.values[i];
        vh.values[i] = 1.0 - c * h;
        vk.values[i] = h * (c - h);  // κ_{m,n} = h_{m,n}
    }
    return {vh, vk};
}

void write_profile_text(const ALProfile& p, std::ostream& os) {
    os << p.cls.m << ' ' << p.cls.n << ' ' << p.profile.grid.N << ' '
       << std::setprecision(17) << p.arc_length << ' ' << p.residual << '\n';
    for (int i = 0; i < p.profile.size(); ++i)
        os << std::setprecision(17) << p.profile.grid.node(i) << ' '
           << p.profile.values[i] << '\n';
}

ALProfile read_profile_text(std::istream& is) {
    ALProfile p;
    int N = 0;
    is >> p.cls.m >> p.cls.n >> N >> p.arc_length >> p.residual;
    if (!is) throw InvalidConfig("read_profile_text: malformed header");
    Grid g = Grid::make(p.cls.m, N);
    p.profile = PeriodicProfile(g, ProfileKind::support);
    for (int i = 0; i < N; ++i) {
        double theta = 0.0;
        is >> theta >> p.profile.values[i];
    }
    if (!is) throw InvalidConfig("read_profile_text: malformed sample rows");
    return p;
}

std::string profile_to_json(const ALProfile& p) {
    nlohmann::json j;
    j["m"] = p.cls.m;
    j["n"] = p.cls.n;
    j["N"] = p.profile.grid.N;
    j["arc_length"] = p.arc_length;
    j["residual"] = p.residual;
    j["values"] = p.profile.values;
    return j.dump(2);
}

} // namespace al
} // namespace csf
