#pragma once

#include <complex>
#include <cstdint>

#include "accdet/kinematics.hpp"
#include "accdet/wavepacket.hpp"

namespace accdet::correlator {

using Complex = std::complex<double>;

// Packet/trajectory data feeding the smeared two-point function. The reduced
// 3D form relies on the identity (Delta x0)^2 - Delta^2 = D, which holds when
// the packet center rides the xi = 0 worldline, i.e. z0 = 1/a.
struct CorrelatorConfig {
    double m = 1.0;
    double hbar = 1.0;
    double a = 1.0;
    double b = 0.5;
    double z0 = 1.0;  // must equal 1/a for the reduced path

    wavepacket::PacketConfig longitudinal() const { return {m, hbar, b, z0, a}; }
    wavepacket::PacketConfig transverse() const { return {m, hbar, b, 0.0, 0.0}; }
    void validate() const;
};

// Inverse widths of the four smearing Gaussians at (tau, tau').
struct SmearingWeights {
    double alpha;    // longitudinal at tau
    double alpha_p;  // longitudinal at tau'
    double gamma;    // transverse at tau  (a = 0 packet)
    double gamma_p;  // transverse at tau' (a = 0 packet)
};

SmearingWeights smearing_weights(const CorrelatorConfig& cfg, double tau, double taup);

enum class Method : std::uint8_t { reduced3d, oracle6d };

struct CorrelatorSample {
    Complex value{0.0, 0.0};
    double err = 0.0;
    Method method = Method::reduced3d;
};

// Integrand of the reduced 3D form, full prefactor included:
//   -(alpha alpha' gamma^2 gamma'^2 / 4 pi^5) sqrt(pi/(alpha^2+alpha'^2))
//     * pi/(gamma^2+gamma'^2) * exp{...} / (D - u^2 - 2 u Delta - p^2 - r^2)
Complex reduced_integrand(double u, double p, double r, const SmearingWeights& w, Complex D,
                          double Delta);

// Adaptive 3D quadrature of reduced_integrand over a Gaussian-truncated box.
CorrelatorSample correlator_reduced(double t, double T, const CorrelatorConfig& cfg, double eps,
                                    double tol);

// Importance-sampled 6D Monte Carlo of the unreduced smeared Wightman form;
// draws (x, x', y, y', z, z') from the exact Gaussian weights and averages
// 1/[4 pi^2 ((dx)^2 + (dy)^2 + (dz)^2 - (dx0 - i eps)^2)].
CorrelatorSample correlator_full_oracle(double t, double T, const CorrelatorConfig& cfg, double eps,
                                        std::size_t n_samples, std::uint64_t seed);

}  // namespace accdet::correlator
