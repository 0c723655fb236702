#include "accdet/correlator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "accdet/quad.hpp"

namespace accdet::correlator {

namespace {
constexpr double kPi = std::numbers::pi;
}

void CorrelatorConfig::validate() const {
    longitudinal().validate();
    if (!(a > 0.0)) throw std::domain_error("CorrelatorConfig: a must be positive");
}

SmearingWeights smearing_weights(const CorrelatorConfig& cfg, double tau, double taup) {
    cfg.validate();
    const auto lon = cfg.longitudinal();
    const auto tra = cfg.transverse();
    return SmearingWeights{std::sqrt(wavepacket::alpha_squared(lon, tau)),
                           std::sqrt(wavepacket::alpha_squared(lon, taup)),
                           std::sqrt(wavepacket::alpha_squared(tra, tau)),
                           std::sqrt(wavepacket::alpha_squared(tra, taup))};
}

Complex reduced_integrand(double u, double p, double r, const SmearingWeights& w, Complex D,
                          double Delta) {
    const double a2 = w.alpha * w.alpha, ap2 = w.alpha_p * w.alpha_p;
    const double g2 = w.gamma * w.gamma, gp2 = w.gamma_p * w.gamma_p;
    if (!(a2 > 0.0 && ap2 > 0.0 && g2 > 0.0 && gp2 > 0.0))
        throw std::domain_error("reduced_integrand: weights must be positive");

    const double F = a2 * ap2 / (a2 + ap2);
    const double Gt = g2 * gp2 / (g2 + gp2);
    const double pref = -(w.alpha * w.alpha_p * g2 * gp2) / (4.0 * std::pow(kPi, 5)) *
                        std::sqrt(kPi / (a2 + ap2)) * kPi / (g2 + gp2);
    const Complex den = D - u * u - 2.0 * u * Delta - p * p - r * r;
    if (den == Complex(0.0, 0.0))
        throw std::runtime_error("reduced_integrand: singular evaluation (eps = 0 on the light cone)");
    return pref * std::exp(-F * u * u - Gt * (p * p + r * r)) / den;
}

CorrelatorSample correlator_reduced(double t, double T, const CorrelatorConfig& cfg, double eps,
                                    double tol) {
    cfg.validate();
    if (!(tol > 0.0)) throw std::domain_error("correlator_reduced: tol must be positive");
    if (std::abs(cfg.a * cfg.z0 - 1.0) > 1e-9)
        throw std::domain_error(
            "correlator_reduced: the reduced form assumes the packet center rides the xi=0 "
            "worldline (z0 = 1/a)");

    const double tau = T + 0.5 * t, taup = T - 0.5 * t;
    const auto w = smearing_weights(cfg, tau, taup);
    const Complex D = kinematics::interval_D(cfg.a, t, eps);
    const double Delta = kinematics::center_separation(cfg.a, cfg.z0, t, T);

    const double a2 = w.alpha * w.alpha, ap2 = w.alpha_p * w.alpha_p;
    const double g2 = w.gamma * w.gamma, gp2 = w.gamma_p * w.gamma_p;
    const double F = a2 * ap2 / (a2 + ap2);
    const double Gt = g2 * gp2 / (g2 + gp2);

    // Gaussian truncation at 8 sigma, padded by the light-cone sphere extent so
    // the near-singular shell is always inside the box.
    const double pole_pad = std::sqrt(std::abs(D) + Delta * Delta) + std::abs(Delta) + 1.0;
    auto ub = quad::gaussian_bounds(0.0, F, 8.0);
    auto tb = quad::gaussian_bounds(0.0, Gt, 8.0);
    quad::QuadRegion region;
    region.lo = {ub[0] - pole_pad, tb[0] - pole_pad, tb[0] - pole_pad};
    region.hi = {ub[1] + pole_pad, tb[1] + pole_pad, tb[1] + pole_pad};
    region.rel_tol = tol;
    region.abs_tol = 1e-14;
    region.max_cells = 400000;

    auto integrand = [&](const double* x) { return reduced_integrand(x[0], x[1], x[2], w, D, Delta); };
    auto q = quad::adaptive_nd(integrand, region);
    if (q.flag == quad::QuadFlag::budget_exhausted && q.err > 10.0 * tol * std::abs(q.value))
        throw std::runtime_error("correlator_reduced: quadrature did not converge within budget");

    CorrelatorSample out;
    out.value = q.value;
    out.err = q.err;
    out.method = Method::reduced3d;
    return out;
}

CorrelatorSample correlator_full_oracle(double t, double T, const CorrelatorConfig& cfg, double eps,
                                        std::size_t n_samples, std::uint64_t seed) {
    cfg.validate();
    if (n_samples < 10000) throw std::domain_error("correlator_full_oracle: need >= 1e4 samples");

    const double tau = T + 0.5 * t, taup = T - 0.5 * t;
    const auto w = smearing_weights(cfg, tau, taup);
    const double zc = kinematics::classical_center(cfg.a, cfg.z0, tau);
    const double zcp = kinematics::classical_center(cfg.a, cfg.z0, taup);
    const double dx0 = (std::sinh(cfg.a * tau) - std::sinh(cfg.a * taup)) / cfg.a;

    // axes: x, x', y, y', z, z'; each Gaussian e^{-w q^2} is N(mu, 1/(2 w^2))
    auto sig = [](double inv_width) { return 1.0 / (std::sqrt(2.0) * inv_width); };
    quad::GaussianSampler sampler;
    sampler.mean = {0.0, 0.0, 0.0, 0.0, zc, zcp};
    sampler.sigma = {sig(w.gamma), sig(w.gamma_p), sig(w.gamma),
                     sig(w.gamma_p), sig(w.alpha), sig(w.alpha_p)};

    const Complex shift(0.0, -eps);
    auto f = [&](const double* q) {
        const double dx = q[0] - q[1];
        const double dy = q[2] - q[3];
        const double dz = q[4] - q[5];
        const Complex dt0 = dx0 + shift;
        const Complex den = dx * dx + dy * dy + dz * dz - dt0 * dt0;
        return 1.0 / den;
    };
    auto mc = quad::mc_importance(f, sampler, n_samples, seed);

    CorrelatorSample out;
    out.value = mc.value / (4.0 * kPi * kPi);
    out.err = mc.stderr_est / (4.0 * kPi * kPi);
    out.method = Method::oracle6d;
    return out;
}

}  // namespace accdet::correlator
