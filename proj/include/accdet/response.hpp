#pragma once

#include <string>
#include <vector>

#include "accdet/correlator.hpp"

namespace accdet::response {

using correlator::CorrelatorConfig;

// One excitation scenario. E = hbar * omega; the matrix element
// |<E|Q(0)|0>|^2 is factored out (all results are per unit matrix element).
struct DetectorConfig {
    double m = 1.0;
    double hbar = 1.0;
    double a = 1.0;
    double b = 0.5;
    double z0 = 1.0;   // 1/a by default
    double omega = 1.0;
    double L = 20.0 * 3.14159265358979323846;

    CorrelatorConfig correlator() const { return {m, hbar, a, b, z0}; }
    void validate() const;
};

struct ResponseResult {
    double probability = 0.0;  // P(E) per unit |<E|Q(0)|0>|^2
    double rate = 0.0;         // probability / L (or the protocol-specific rate)
    double quad_err = 0.0;
    int ladder_truncation = 0;
    std::string flags;         // empty when fully converged
    DetectorConfig config;
};

// Shape of one ladder rung: the octant (u, p, r) integral of the folded
// residue integrand with the Boltzmann factor stripped. Rungs share this
// shape exactly; the full rung is e^{-2 pi n omega / a} * rung_shape(T).
// Computed in polar transverse coordinates.
struct RungShape {
    double value = 0.0;
    double err = 0.0;
    bool converged = true;
};

RungShape rung_shape(const DetectorConfig& cfg, double T, double tol, int n = 1);

// Windowed transition probability: T-integral over (0, L) of the rung shape
// times the window-truncated Boltzmann ladder (rung n active for
// |T - L/2| < L/2 - pi n / a, capped by the tolerance ladder depth).
ResponseResult transition_probability(const DetectorConfig& cfg, double tol);

// Stationary (plateau) excitation rate: full tolerance-truncated ladder times
// the small-T average of the rung shape. This is the rate the limit sweeps
// scan; see README notes on windowing vs. packet spreading.
ResponseResult stationary_rate(const DetectorConfig& cfg, double tol);

// (omega / 2 pi) sum_{n=1}^{N} e^{-2 pi n omega / a}
double unruh_rate_closed_form(double omega, double a, int N);
// N -> infinity: (omega / 2 pi) / (e^{2 pi omega / a} - 1)
double unruh_rate_closed_form(double omega, double a);

struct SweepCell {
    double hbar = 0.0;
    double b = 0.0;
    double value = 0.0;  // rate (classical-first) or probability (point-first)
    double err = 0.0;
    std::string flags;
};

struct ClassicalFirstSweep {
    std::vector<SweepCell> cells;  // hbar leg then b leg
    double final_rate = 0.0;
    double final_err = 0.0;
    double target = 0.0;  // closed form at the ladder depth used
};

ClassicalFirstSweep limit_sweep_classical_first(const DetectorConfig& base,
                                                const std::vector<double>& hbar_grid,
                                                const std::vector<double>& b_grid, double tol);

struct PointFirstSweep {
    std::vector<SweepCell> cells;
    double exponent = 0.0;       // fitted d log P / d log b
    double exponent_stderr = 0.0;
    double intercept = 0.0;
    double extrapolated_p0 = 0.0;  // fit evaluated at b -> 0 (always 0 for positive exponent)
};

PointFirstSweep limit_sweep_point_first(const DetectorConfig& base, const std::vector<double>& b_grid,
                                        double tol);

struct RateFit {
    double rate = 0.0;      // fitted slope of P(L)
    double residual = 0.0;  // rms fit residual / max |P|
    std::vector<double> probabilities;
};

// P(L)/L behavior over an increasing L grid: linear least-squares slope.
// Throws when the growth is strongly non-linear.
RateFit rate_per_unit_time(const DetectorConfig& cfg, const std::vector<double>& L_grid, double tol);

}  // namespace accdet::response
