#pragma once

#include <complex>
#include <vector>

#include "accdet/correlator.hpp"

namespace accdet::residues {

using Complex = std::complex<double>;
using correlator::CorrelatorConfig;

// Roots of sinh(at/2) = u_pm, the pole parameters of the proper-time integral:
//   u_pm = (a/2) [ u sinh(aT) +- sqrt(u^2 sinh^2(aT) + u^2 + p^2 + r^2) ]
struct PoleBranch {
    double u_plus;
    double u_minus;
};

PoleBranch u_pm(double u, double p, double r, double T, double a);

// Real part of the n-th pole time, t^n = (-1)^n (2/a) asinh(u_pm); the full
// pole sits at t = -2 pi i n / a + t^n.
double pole_times(int n, double branch_value, double a);

// Weights of one ladder rung, assembled from the pole-evaluated packet widths.
// All square roots are taken positive (the convention under which the folded
// ladder reproduces the closed-form thermal rate in the classical point limit).
struct ResidueTerm {
    int n = 1;
    double u_plus = 0.0, u_minus = 0.0;
    double t_n_plus = 0.0, t_n_minus = 0.0;
    double delta_plus = 0.0, delta_minus = 0.0;
    double alpha_plus = 0.0, alpha_minus = 0.0;
    double alpha_p_plus = 0.0, alpha_p_minus = 0.0;
    double beta_plus = 0.0, beta_minus = 0.0;
    double beta_p_plus = 0.0, beta_p_minus = 0.0;
    double gamma_plus = 0.0, gamma_minus = 0.0;
};

ResidueTerm residue_weights(int n, double u, double p, double r, double T,
                            const CorrelatorConfig& cfg);

// Ladder windowing: the t window at detector time T for switch-on interval
// (0, L) has half-width L - 2|T - L/2|, and the rung count is the largest
// integer <= (half-width) a / (2 pi).
double window_halfwidth(double L, double T);
int ladder_count(double halfwidth, double a);

// Smallest N at which the Boltzmann ladder tail drops below `rel` of the n=1
// rung.
int ladder_count_tolerance(double omega, double a, double rel = 1e-12);

// Residue-ladder value of the windowed t-integral at one (u, p, r, T) point:
//   i (a/2) / (2 pi^4) sum_{n=1}^{N} (-1)^n e^{-2 pi n omega / a} / (u+ - u-)
//     [ delta+ e^{-i omega t^n_+} / sqrt(1+u+^2) - (+ -> -) ]
// (the closed-form-anchored normalization; see the validation notes for how
// this relates to the directly quadratured window integral).
Complex inner_t_integral(double omega, double T, double u, double p, double r,
                         const CorrelatorConfig& cfg, int N);

// Direct quadrature of the windowed t-integrand (the double-sinh-pole form of
// the reduced correlator times e^{-i omega t}) at finite eps.
Complex direct_t_integral(double omega, double T, double u, double p, double r,
                          const CorrelatorConfig& cfg, double eps, double halfwidth,
                          double rel_tol = 1e-9);

// Richardson extrapolation of direct_t_integral over {eps, eps/2, eps/4}.
struct OracleResult {
    Complex value;        // extrapolated
    Complex seq[3];       // values at eps, eps/2, eps/4
};

OracleResult direct_t_oracle(double omega, double T, double u, double p, double r,
                             const CorrelatorConfig& cfg, double eps, double halfwidth);

}  // namespace accdet::residues
