#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace accdet::quad {

using Complex = std::complex<double>;

enum class QuadFlag { converged, budget_exhausted, sliver_excluded };

struct QuadResult {
    Complex value{0.0, 0.0};
    double err = 0.0;
    std::size_t cells = 0;
    QuadFlag flag = QuadFlag::converged;

    double real() const { return value.real(); }
    bool ok() const { return flag == QuadFlag::converged; }
};

// Axis-aligned integration region. Bounds must be finite; semi-infinite axes
// are handled by the caller through a compactifying map (see mapped_axis).
struct QuadRegion {
    std::vector<double> lo;
    std::vector<double> hi;
    double rel_tol = 1e-6;
    double abs_tol = 1e-14;
    std::size_t max_cells = 200000;
    double min_cell_width = 1e-8;

    std::size_t dim() const { return lo.size(); }
};

// Gaussian-truncated bounds: center +- k standard deviations of a weight
// exp(-w x^2), i.e. sigma = 1/sqrt(2 w).
std::array<double, 2> gaussian_bounds(double center, double inv_width_sq, double k_sigma);

// ---------------------------------------------------------------------------
// adaptive_nd: nested adaptive subdivision with an embedded-rule error
// estimate per cell (Gauss-Kronrod 7/15 in 1D, tensor GK in 2D/3D).
// Deterministic: the subdivision queue is processed in a canonical order so
// identical inputs give bit-identical results.
// ---------------------------------------------------------------------------
QuadResult adaptive_nd(const std::function<Complex(const double*)>& f, const QuadRegion& region);

// Real-valued convenience wrapper.
QuadResult adaptive_nd_real(const std::function<double(const double*)>& f, const QuadRegion& region);

// ---------------------------------------------------------------------------
// oscillatory_1d: panel quadrature for integrands carrying an e^{-i omega t}
// factor, with panels capped at pi/(4 omega) and forced refinement around
// caller-supplied pole locations (distance hints enter the initial panel set).
// ---------------------------------------------------------------------------
QuadResult oscillatory_1d(const std::function<Complex(double)>& f, double t_lo, double t_hi,
                          double omega, const std::vector<double>& pole_hints,
                          double rel_tol = 1e-8, double abs_tol = 1e-14,
                          std::size_t max_panels = 40000);

// ---------------------------------------------------------------------------
// mc_importance: importance-sampled Monte Carlo with independent Gaussian
// axes x_i ~ N(mean_i, sigma_i^2). Estimates E[f(x)] and its standard error;
// bit-identical for a fixed seed.
// ---------------------------------------------------------------------------
struct GaussianSampler {
    std::vector<double> mean;
    std::vector<double> sigma;
};

struct McResult {
    Complex value{0.0, 0.0};
    double stderr_est = 0.0;
    std::size_t n = 0;
};

McResult mc_importance(const std::function<Complex(const double*)>& f, const GaussianSampler& sampler,
                       std::size_t n_samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Semi-infinite axis map u = s/(1-s), s in [0,1): returns (u, du/ds).
// ---------------------------------------------------------------------------
inline std::array<double, 2> mapped_axis(double s) {
    const double om = 1.0 - s;
    return {s / om, 1.0 / (om * om)};
}

// Richardson extrapolation of v(eps) = v0 + c1 eps + c2 eps^2 sampled at
// {eps, eps/2, eps/4}.
inline Complex richardson3(Complex v_eps, Complex v_half, Complex v_quarter) {
    return (8.0 * v_quarter - 6.0 * v_half + v_eps) / 3.0;
}

}  // namespace accdet::quad
