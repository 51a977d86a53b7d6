// spectral.hpp — periodic-grid calculus: FFT-based differentiation, quadrature,
// trigonometric interpolation, sign-change counting, symmetry projection.

#ifndef CSF_SPECTRAL_HPP
#define CSF_SPECTRAL_HPP

#include "csf/grid.hpp"

#include <complex>
#include <vector>

namespace csf::spectral {

/// Dead-band fraction for count_sign_changes: samples with |v| below
/// 1e-9 * max|v| are skipped so exact zeros at symmetry points do not
/// produce spurious crossings.
inline constexpr double zero_dead_band = 1e-9;

/// d^order/dθ^order of the trigonometric interpolant, exact for grid-representable
/// modes. Wavenumbers are k/m; the Nyquist mode is zeroed for odd orders.
PeriodicProfile differentiate(const PeriodicProfile& p, int order);

/// (2mπ/N) Σ values — the uniform-node rule, spectrally accurate for smooth
/// periodic integrands.
double integrate(const PeriodicProfile& p);

/// Value of the trigonometric interpolant at θ (θ taken mod 2mπ).
/// For repeated evaluation build a TrigInterpolant instead.
double eval_at(const PeriodicProfile& p, double theta);

/// Cyclic sign changes of the sample sequence, dead-band entries skipped.
int count_sign_changes(const PeriodicProfile& p);

/// Real Fourier coefficients of a profile:
///   f(θ) = a[0] + Σ_{k=1}^{N/2-1} (a[k] cos(kθ/m) + b[k] sin(kθ/m)) + a[N/2] cos((N/2)θ/m)
struct TrigInterpolant {
    explicit TrigInterpolant(const PeriodicProfile& p);

    double operator()(double theta) const;
    double derivative(double theta) const;

    Grid grid;
    std::vector<double> a, b;  // size N/2+1; b[0] = b[N/2] = 0
};

/// Projects onto the subspace of even (cosine) functions whose wavenumber
/// indices are multiples of nfold. nfold = 1 keeps all wavenumbers; even =
/// false keeps sine parts. This is the symmetry class preserved by the flow.
PeriodicProfile project_symmetric(const PeriodicProfile& p, int nfold, bool even = true);

/// Resamples onto a finer grid (M >= N) through the trigonometric interpolant
/// by zero-padding the spectrum. Used for dense curve rendering and root scans.
std::vector<double> resample(const PeriodicProfile& p, int M);

/// Workspace owning FFTW plans and buffers for one grid size. Exposes the raw
/// spectral hooks the flow stepper needs without re-planning per call. A
/// process-wide mutex guards FFTW's planner; execution is thread-safe because
/// every workspace owns its buffers.
class Workspace {
public:
    explicit Workspace(Grid grid);
    ~Workspace();
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    const Grid& grid() const { return grid_; }

    /// values -> r2c spectrum (unnormalized FFTW convention, length N/2+1).
    void forward(const std::vector<double>& values);
    /// spectrum -> values, scaling by 1/N.
    void inverse(std::vector<double>& values_out) const;

    std::complex<double>* spectrum() { return spec_; }
    const std::complex<double>* spectrum() const { return spec_; }
    int spectrum_size() const { return grid_.N / 2 + 1; }

    /// In-place multiply of the spectrum by (i k/m)^order; Nyquist zeroed for
    /// odd orders.
    void apply_derivative(int order);
    /// Zero non-multiples of nfold; optionally drop sine (imaginary) parts.
    void apply_symmetry(int nfold, bool even);

private:
    Grid grid_;
    double* real_ = nullptr;
    std::complex<double>* spec_ = nullptr;
    void* plan_fwd_ = nullptr;
    void* plan_inv_ = nullptr;
    mutable std::vector<std::complex<double>> scratch_;
};

} // namespace csf::spectral

#endif
