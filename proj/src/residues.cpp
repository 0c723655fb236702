#include "accdet/residues.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "accdet/kinematics.hpp"
#include "accdet/quad.hpp"

namespace accdet::residues {

namespace {
constexpr double kPi = std::numbers::pi;
}

PoleBranch u_pm(double u, double p, double r, double T, double a) {
    if (!(a > 0.0)) throw std::domain_error("u_pm: a must be positive");
    const double s = std::sinh(a * T);
    const double rad = u * u * s * s + u * u + p * p + r * r;
    if (rad == 0.0) throw std::domain_error("u_pm: degenerate point u = p = r = 0");
    const double root = std::sqrt(rad);
    return PoleBranch{0.5 * a * (u * s + root), 0.5 * a * (u * s - root)};
}

double pole_times(int n, double branch_value, double a) {
    if (n < 1) throw std::domain_error("pole_times: n must be >= 1");
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * (2.0 / a) * std::asinh(branch_value);
}

namespace {

struct BranchWeights {
    double delta, alpha, alpha_p, beta, beta_p, gamma;
};

// Pole-evaluated packet widths for one branch. sinh/cosh at the pole time are
// real: sinh(a tau*) = (-1)^n sqrt(1+ub^2) sinh(aT) + ub cosh(aT), etc.
BranchWeights branch_weights(int n, double ub, double u, double prsq, double T,
                             const CorrelatorConfig& cfg) {
    const double S = std::sinh(cfg.a * T), C = std::cosh(cfg.a * T);
    const double par = (n % 2 == 0) ? 1.0 : -1.0;
    const double q = std::sqrt(1.0 + ub * ub);
    const double s1 = par * q * S + ub * C;   // sinh(a tau*)
    const double c1 = par * q * C + ub * S;   // cosh(a tau*)
    const double s2 = par * q * S - ub * C;   // sinh(a tau'*)
    const double c2 = par * q * C - ub * S;   // cosh(a tau'*)

    const double hb = cfg.hbar / (cfg.m * cfg.a * cfg.b);  // hbar/(m a b)
    const double A1 = 1.0 / (hb * hb * s1 * s1 + cfg.b * cfg.b * c1 * c1);
    const double A2 = 1.0 / (hb * hb * s2 * s2 + cfg.b * cfg.b * c2 * c2);

    // transverse width at the pole: the a -> 0 form of alpha_pm, keeping u_pm
    const double gam_sq = 1.0 / (hb * hb * ub * ub + cfg.b * cfg.b * (1.0 + ub * ub));

    const double F = A1 * A2 / (A1 + A2);
    const double lam = std::sqrt(A1) * std::sqrt(A2) * std::sqrt(kPi / (A1 + A2));
    const double delta =
        lam * (kPi / 2.0) * gam_sq * std::exp(-F * u * u - 0.5 * gam_sq * prsq);

    const double k = cfg.m * cfg.a / (2.0 * cfg.hbar);
    if (s1 == 0.0 || s2 == 0.0)
        throw std::runtime_error("residue_weights: singular beta denominator (measure-zero locus)");

    return BranchWeights{delta, std::sqrt(A1), std::sqrt(A2), k / s1, k / s2, std::sqrt(gam_sq)};
}

}  // namespace

ResidueTerm residue_weights(int n, double u, double p, double r, double T,
                            const CorrelatorConfig& cfg) {
    if (n < 1) throw std::domain_error("residue_weights: n must be >= 1");
    cfg.validate();
    const auto br = u_pm(u, p, r, T, cfg.a);
    const double prsq = p * p + r * r;

    const auto wp = branch_weights(n, br.u_plus, u, prsq, T, cfg);
    const auto wm = branch_weights(n, br.u_minus, u, prsq, T, cfg);

    ResidueTerm out;
    out.n = n;
    out.u_plus = br.u_plus;
    out.u_minus = br.u_minus;
    out.t_n_plus = pole_times(n, br.u_plus, cfg.a);
    out.t_n_minus = pole_times(n, br.u_minus, cfg.a);
    out.delta_plus = wp.delta;
    out.delta_minus = wm.delta;
    out.alpha_plus = wp.alpha;
    out.alpha_minus = wm.alpha;
    out.alpha_p_plus = wp.alpha_p;
    out.alpha_p_minus = wm.alpha_p;
    out.beta_plus = wp.beta;
    out.beta_minus = wm.beta;
    out.beta_p_plus = wp.beta_p;
    out.beta_p_minus = wm.beta_p;
    out.gamma_plus = wp.gamma;
    out.gamma_minus = wm.gamma;
    return out;
}

double window_halfwidth(double L, double T) {
    if (!(L > 0.0)) throw std::domain_error("window_halfwidth: L must be positive");
    return L - 2.0 * std::abs(T - 0.5 * L);
}

int ladder_count(double halfwidth, double a) {
    if (halfwidth <= 0.0) return 0;
    return static_cast<int>(std::floor(halfwidth * a / (2.0 * kPi)));
}

int ladder_count_tolerance(double omega, double a, double rel) {
    if (!(omega > 0.0) || !(a > 0.0)) throw std::domain_error("ladder_count_tolerance: need positive omega, a");
    const double x = 2.0 * kPi * omega / a;
    return 1 + static_cast<int>(std::ceil(-std::log(rel) / x));
}

Complex inner_t_integral(double omega, double T, double u, double p, double r,
                         const CorrelatorConfig& cfg, int N) {
    if (N < 0) throw std::domain_error("inner_t_integral: N must be >= 0");
    Complex acc(0.0, 0.0);
    for (int n = 1; n <= N; ++n) {
        const auto term = residue_weights(n, u, p, r, T, cfg);
        const double par = (n % 2 == 0) ? 1.0 : -1.0;
        const double boltz = std::exp(-2.0 * kPi * n * omega / cfg.a);
        const double qp = std::sqrt(1.0 + term.u_plus * term.u_plus);
        const double qm = std::sqrt(1.0 + term.u_minus * term.u_minus);
        const Complex bracket =
            term.delta_plus * std::exp(Complex(0.0, -omega * term.t_n_plus)) / qp -
            term.delta_minus * std::exp(Complex(0.0, -omega * term.t_n_minus)) / qm;
        acc += par * boltz / (term.u_plus - term.u_minus) * bracket;
    }
    return Complex(0.0, 0.5 * cfg.a) / (2.0 * std::pow(kPi, 4)) * acc;
}

Complex direct_t_integral(double omega, double T, double u, double p, double r,
                          const CorrelatorConfig& cfg, double eps, double halfwidth,
                          double rel_tol) {
    cfg.validate();
    if (!(eps > 0.0)) throw std::domain_error("direct_t_integral: eps must be positive");
    if (!(halfwidth > 0.0)) throw std::domain_error("direct_t_integral: empty window");

    const auto br = u_pm(u, p, r, T, cfg.a);
    const double prsq = p * p + r * r;

    auto integrand = [&](double t) -> Complex {
        const double tau = T + 0.5 * t, taup = T - 0.5 * t;
        const auto w = correlator::smearing_weights(cfg, tau, taup);
        const double a2 = w.alpha * w.alpha, ap2 = w.alpha_p * w.alpha_p;
        const double g2 = w.gamma * w.gamma, gp2 = w.gamma_p * w.gamma_p;
        const double F = a2 * ap2 / (a2 + ap2);
        const double Gt = g2 * gp2 / (g2 + gp2);
        const double pref = -(w.alpha * w.alpha_p * g2 * gp2) / (4.0 * std::pow(kPi, 5)) *
                            std::sqrt(kPi / (a2 + ap2)) * kPi / (g2 + gp2);
        const double S = std::sinh(0.5 * cfg.a * t);
        const Complex dp = S - br.u_plus - Complex(0.0, eps);
        const Complex dm = S - br.u_minus - Complex(0.0, eps);
        return -(cfg.a * cfg.a / 4.0) * pref * std::exp(-F * u * u - Gt * prsq) *
               std::exp(Complex(0.0, -omega * t)) / (dp * dm);
    };

    const std::vector<double> hints = {(2.0 / cfg.a) * std::asinh(br.u_plus),
                                       (2.0 / cfg.a) * std::asinh(br.u_minus)};
    auto q = quad::oscillatory_1d(integrand, -halfwidth, halfwidth, omega, hints, rel_tol, 1e-16,
                                  80000);
    return q.value;
}

OracleResult direct_t_oracle(double omega, double T, double u, double p, double r,
                             const CorrelatorConfig& cfg, double eps, double halfwidth) {
    OracleResult out;
    out.seq[0] = direct_t_integral(omega, T, u, p, r, cfg, eps, halfwidth);
    out.seq[1] = direct_t_integral(omega, T, u, p, r, cfg, eps / 2.0, halfwidth);
    out.seq[2] = direct_t_integral(omega, T, u, p, r, cfg, eps / 4.0, halfwidth);
    out.value = quad::richardson3(out.seq[0], out.seq[1], out.seq[2]);
    return out;
}

}  // namespace accdet::residues
