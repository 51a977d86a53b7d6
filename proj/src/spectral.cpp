// spectral.cpp — FFTW-backed implementation of the periodic-grid calculus.

#include "csf/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace csf::spectral {

namespace {

// FFTW's planner is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex mu;
    return mu;
}

Workspace& cached_workspace(const Grid& g) {
    thread_local std::map<std::pair<int, int>, std::unique_ptr<Workspace>> cache;
    auto key = std::make_pair(g.m, g.N);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<Workspace>(g)).first;
    return *it->second;
}

} // namespace

Workspace::Workspace(Grid grid) : grid_(grid) {
    const int N = grid_.N;
    real_ = fftw_alloc_real(N);
    spec_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(N / 2 + 1));
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_dft_r2c_1d(N, real_, reinterpret_cast<fftw_complex*>(spec_),
                                     FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_1d(N, reinterpret_cast<fftw_complex*>(spec_), real_,
                                     FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
}

Workspace::~Workspace() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    fftw_free(real_);
    fftw_free(spec_);
}

void Workspace::forward(const std::vector<double>& values) {
    std::memcpy(real_, values.data(), sizeof(double) * grid_.N);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
}

void Workspace::inverse(std::vector<double>& values_out) const {
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    values_out.resize(static_cast<size_t>(grid_.N));
    const double inv_n = 1.0 / grid_.N;
    for (int i = 0; i < grid_.N; ++i) values_out[i] = real_[i] * inv_n;
}

void Workspace::apply_derivative(int order) {
    const int half = grid_.N / 2;
    if (order % 2 == 0) {
        const int sign = (order % 4 == 0) ? 1 : -1;
        for (int k = 0; k <= half; ++k) {
            const double q = grid_.wavenumber(k);
            spec_[k] *= sign * std::pow(q, order);
        }
    } else {
        // i^order is ±i for odd orders
        const double s = (order % 4 == 1) ? 1.0 : -1.0;
        for (int k = 0; k < half; ++k) {
            const double q = grid_.wavenumber(k);
            const std::complex<double> c = spec_[k];
            spec_[k] = std::complex<double>(-s * std::pow(q, order) * c.imag(),
                                            s * std::pow(q, order) * c.real());
        }
        spec_[half] = 0.0;  // Nyquist has no well-defined odd derivative
    }
}

void Workspace::apply_symmetry(int nfold, bool even) {
    const int half = grid_.N / 2;
    for (int k = 0; k <= half; ++k) {
        if (nfold > 1 && k % nfold != 0) {
            spec_[k] = 0.0;
        } else if (even) {
            spec_[k] = std::complex<double>(spec_[k].real(), 0.0);
        }
    }
}

PeriodicProfile differentiate(const PeriodicProfile& p, int order) {
    if (order < 1 || order > 3)
        throw InvalidConfig("differentiate: order must be 1, 2 or 3");
    Workspace& ws = cached_workspace(p.grid);
    ws.forward(p.values);
    ws.apply_derivative(order);
    PeriodicProfile out(p.grid, ProfileKind::field);
    ws.inverse(out.values);
    return out;
}

double integrate(const PeriodicProfile& p) {
    double s = 0.0;
    for (double v : p.values) s += v;
    return s * p.grid.dtheta();
}

double eval_at(const PeriodicProfile& p, double theta) {
    return TrigInterpolant(p)(theta);
}

int count_sign_changes(const PeriodicProfile& p) {
    double amax = 0.0;
    for (double v : p.values) amax = std::max(amax, std::abs(v));
    const double db = zero_dead_band * amax;
    std::vector<int> signs;
    signs.reserve(p.values.size());
    for (double v : p.values)
        if (std::abs(v) > db) signs.push_back(v > 0 ? 1 : -1);
    if (signs.empty()) return 0;
    int count = 0;
    for (size_t i = 0; i < signs.size(); ++i)
        if (signs[i] != signs[(i + 1) % signs.size()]) ++count;
    return count;
}

TrigInterpolant::TrigInterpolant(const PeriodicProfile& p) : grid(p.grid) {
    Workspace& ws = cached_workspace(p.grid);
    ws.forward(p.values);
    const int half = grid.N / 2;
    a.assign(half + 1, 0.0);
    b.assign(half + 1, 0.0);
    const std::complex<double>* c = ws.spectrum();
    const double inv_n = 1.0 / grid.N;
    a[0] = c[0].real() * inv_n;
    for (int k = 1; k < half; ++k) {
        a[k] = 2.0 * c[k].real() * inv_n;
        b[k] = -2.0 * c[k].imag() * inv_n;
    }
    a[half] = c[half].real() * inv_n;
}

double TrigInterpolant::operator()(double theta) const {
    const int half = grid.N / 2;
    double s = a[0];
    for (int k = 1; k <= half; ++k) {
        const double q = grid.wavenumber(k);
        s += a[k] * std::cos(q * theta) + b[k] * std::sin(q * theta);
    }
    return s;
}

double TrigInterpolant::derivative(double theta) const {
    const int half = grid.N / 2;
    double s = 0.0;
    for (int k = 1; k < half; ++k) {  // Nyquist excluded, as in differentiate
        const double q = grid.wavenumber(k);
        s += q * (-a[k] * std::sin(q * theta) + b[k] * std::cos(q * theta));
    }
    return s;
}

PeriodicProfile project_symmetric(const PeriodicProfile& p, int nfold, bool even) {
    Workspace& ws = cached_workspace(p.grid);
    ws.forward(p.values);
    ws.apply_symmetry(nfold, even);
    PeriodicProfile out(p.grid, p.kind);
    ws.inverse(out.values);
    return out;
}

std::vector<double> resample(const PeriodicProfile& p, int M) {
    if (M < p.grid.N || M % 2 != 0)
        throw InvalidConfig("resample: M must be even and >= N");
    Workspace& ws = cached_workspace(p.grid);
    ws.forward(p.values);
    std::vector<std::complex<double>> padded(static_cast<size_t>(M / 2 + 1), 0.0);
    const int half = p.grid.N / 2;
    for (int k = 0; k <= half; ++k) padded[k] = ws.spectrum()[k];
    if (M > p.grid.N) padded[half] *= 0.5;  // split Nyquist into the padded band

    Workspace& wide = cached_workspace(Grid{p.grid.m, M});
    std::copy(padded.begin(), padded.end(), wide.spectrum());
    std::vector<double> out;
    wide.inverse(out);
    const double scale = static_cast<double>(M) / p.grid.N;
    for (double& v : out) v *= scale;
    return out;
}

} // namespace csf::spectral
