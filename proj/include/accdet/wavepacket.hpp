#pragma once

#include <complex>
#include <vector>

namespace accdet::wavepacket {

using Complex = std::complex<double>;

// Gaussian packet evolving under the inverted oscillator H = p^2/2m - m a^2 z^2/2.
// Transverse (x, y) packets reuse this with a = 0, z0 = 0; there is no separate
// code path.
struct PacketConfig {
    double m = 1.0;
    double hbar = 1.0;
    double b = 0.5;  // initial width
    double z0 = 1.0; // initial center
    double a = 1.0;  // 0 for free (transverse) packets

    void validate() const;
};

// Parameters of the evolved probability density (alpha/sqrt(pi)) e^{-alpha^2 (z-z_c)^2}.
struct DensityParams {
    double alpha;
    double z_c;
};

// beta = m a / (2 hbar sinh(a tau)); the a -> 0 limit m/(2 hbar tau) is taken
// below a small-argument threshold. tau = 0 is singular.
double beta(double m, double hbar, double a, double tau);

// Inverted-oscillator propagator K(z, tau; z', 0); principal branches, phase
// continuous from the free kernel as tau -> 0+.
Complex kernel(const PacketConfig& cfg, double z, double zp, double tau);

// alpha^2 = [ hbar^2 sinh^2(a tau) / (m a b)^2 + b^2 cosh^2(a tau) ]^{-1},
// continuous at tau = 0 (alpha = 1/b) and at a = 0 (free spreading).
double alpha_squared(const PacketConfig& cfg, double tau);

DensityParams evolve_density(const PacketConfig& cfg, double tau);

// Evolved amplitude psi(z, tau); |psi|^2 equals the evolve_density Gaussian.
Complex evolve_amplitude(const PacketConfig& cfg, double z, double tau);

// ---------------------------------------------------------------------------
// Independent PDE oracle: Crank-Nicolson evolution of the initial packet on a
// uniform grid. Unconditionally stable and norm-preserving; used to validate
// the closed forms.
// ---------------------------------------------------------------------------
struct GridSpec {
    double z_min;
    double z_max;
    std::size_t n_points;
    std::size_t n_steps;
};

struct SampledDensity {
    std::vector<double> z;
    std::vector<double> density;
    double norm_drift;     // |1 - integral of density|
    double boundary_mass;  // max boundary density / peak density
};

SampledDensity pde_oracle_evolve(const PacketConfig& cfg, const GridSpec& grid, double tau);

}  // namespace accdet::wavepacket
