#include "accdet/wavepacket.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace accdet::wavepacket {

namespace {
constexpr double kPi = std::numbers::pi;

// sinh(a tau)/a, continuous at a = 0
double sinh_ratio(double a, double tau) {
    if (a == 0.0) return tau;
    return std::sinh(a * tau) / a;
}
}  // namespace

void PacketConfig::validate() const {
    if (!(m > 0.0)) throw std::domain_error("PacketConfig: m must be positive");
    if (!(hbar > 0.0)) throw std::domain_error("PacketConfig: hbar must be positive");
    if (!(b > 0.0)) throw std::domain_error("PacketConfig: b must be positive");
    if (a < 0.0) throw std::domain_error("PacketConfig: a must be non-negative");
}

double beta(double m, double hbar, double a, double tau) {
    if (tau == 0.0) throw std::domain_error("beta: singular at tau = 0");
    if (a == 0.0) return m / (2.0 * hbar * tau);
    return m * a / (2.0 * hbar * std::sinh(a * tau));
}

double alpha_squared(const PacketConfig& cfg, double tau) {
    cfg.validate();
    const double s = sinh_ratio(cfg.a, tau);  // sinh(a tau)/a
    const double c = std::cosh(cfg.a * tau);
    const double q = cfg.hbar * s / (cfg.m * cfg.b);
    return 1.0 / (q * q + cfg.b * cfg.b * c * c);
}

DensityParams evolve_density(const PacketConfig& cfg, double tau) {
    if (tau < 0.0) throw std::domain_error("evolve_density: tau must be non-negative");
    return {std::sqrt(alpha_squared(cfg, tau)), cfg.z0 * std::cosh(cfg.a * tau)};
}

Complex kernel(const PacketConfig& cfg, double z, double zp, double tau) {
    cfg.validate();
    if (!(tau > 0.0)) throw std::domain_error("kernel: requires tau > 0");
    const double bet = beta(cfg.m, cfg.hbar, cfg.a, tau);
    const double c = std::cosh(cfg.a * tau);
    // (beta/(i pi))^{1/2}: principal branch, continuous from the free kernel
    const Complex pref = std::sqrt(Complex(0.0, -bet / kPi));
    const Complex phase = Complex(0.0, bet) * ((z * z + zp * zp) * c - 2.0 * z * zp);
    return pref * std::exp(phase);
}

Complex evolve_amplitude(const PacketConfig& cfg, double z, double tau) {
    cfg.validate();
    if (tau < 0.0) throw std::domain_error("evolve_amplitude: tau must be non-negative");
    const double norm0 = 1.0 / std::sqrt(cfg.b * std::sqrt(kPi));
    if (tau == 0.0) {
        const double d = z - cfg.z0;
        return norm0 * std::exp(-d * d / (2.0 * cfg.b * cfg.b));
    }
    const double bet = beta(cfg.m, cfg.hbar, cfg.a, tau);
    const double c = std::cosh(cfg.a * tau);
    // Gaussian integral of K(z,tau;z',0) psi0(z') over z'
    const Complex P(1.0 / (2.0 * cfg.b * cfg.b), -bet * c);
    const Complex Q(cfg.z0 / (cfg.b * cfg.b), -2.0 * bet * z);
    const Complex pref = std::sqrt(Complex(0.0, -bet / kPi)) * std::sqrt(kPi / P);
    const Complex expo =
        Complex(0.0, bet * c * z * z) + Q * Q / (4.0 * P) - cfg.z0 * cfg.z0 / (2.0 * cfg.b * cfg.b);
    return norm0 * pref * std::exp(expo);
}

SampledDensity pde_oracle_evolve(const PacketConfig& cfg, const GridSpec& grid, double tau) {
    cfg.validate();
    if (!(tau >= 0.0)) throw std::domain_error("pde_oracle_evolve: tau must be non-negative");
    if (grid.n_points < 8 || grid.n_steps < 1 || !(grid.z_max > grid.z_min))
        throw std::invalid_argument("pde_oracle_evolve: malformed grid");

    const std::size_t n = grid.n_points;
    const double dz = (grid.z_max - grid.z_min) / static_cast<double>(n - 1);
    const double dt = tau / static_cast<double>(grid.n_steps);

    std::vector<double> z(n);
    std::vector<Complex> psi(n);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = grid.z_min + dz * static_cast<double>(i);
        const double d = z[i] - cfg.z0;
        psi[i] = std::exp(-d * d / (2.0 * cfg.b * cfg.b)) / std::sqrt(cfg.b * std::sqrt(kPi));
    }

    // Crank-Nicolson: (I + i dt H / 2 hbar) psi^{k+1} = (I - i dt H / 2 hbar) psi^k
    // H = -(hbar^2/2m) d^2/dz^2 - (m a^2/2) z^2, Dirichlet boundaries
    const double kin = cfg.hbar * cfg.hbar / (2.0 * cfg.m * dz * dz);
    const Complex lam = Complex(0.0, dt / (2.0 * cfg.hbar));
    std::vector<Complex> diag_p(n), diag_m(n);
    const Complex off_p = lam * (-kin);
    const Complex off_m = -lam * (-kin);
    for (std::size_t i = 0; i < n; ++i) {
        const double V = -0.5 * cfg.m * cfg.a * cfg.a * z[i] * z[i];
        const Complex Hd = 2.0 * kin + V;
        diag_p[i] = 1.0 + lam * Hd;
        diag_m[i] = 1.0 - lam * Hd;
    }

    std::vector<Complex> rhs(n), cp(n), dp(n);
    for (std::size_t step = 0; step < grid.n_steps; ++step) {
        rhs[0] = diag_m[0] * psi[0] + off_m * psi[1];
        for (std::size_t i = 1; i + 1 < n; ++i)
            rhs[i] = off_m * psi[i - 1] + diag_m[i] * psi[i] + off_m * psi[i + 1];
        rhs[n - 1] = off_m * psi[n - 2] + diag_m[n - 1] * psi[n - 1];

        // Thomas solve, constant off-diagonals
        cp[0] = off_p / diag_p[0];
        dp[0] = rhs[0] / diag_p[0];
        for (std::size_t i = 1; i < n; ++i) {
            const Complex denom = diag_p[i] - off_p * cp[i - 1];
            cp[i] = off_p / denom;
            dp[i] = (rhs[i] - off_p * dp[i - 1]) / denom;
        }
        psi[n - 1] = dp[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) psi[i] = dp[i] - cp[i] * psi[i + 1];
    }

    SampledDensity out;
    out.z = z;
    out.density.resize(n);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.density[i] = std::norm(psi[i]);
        peak = std::max(peak, out.density[i]);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) norm += 0.5 * (out.density[i] + out.density[i + 1]) * dz;
    out.norm_drift = std::abs(1.0 - norm);
    out.boundary_mass = std::max(out.density.front(), out.density.back()) / peak;
    if (out.boundary_mass > 1e-12)
        throw std::runtime_error("pde_oracle_evolve: grid too narrow, boundary mass above threshold");
    return out;
}

}  // namespace accdet::wavepacket
