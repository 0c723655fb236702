#include "accdet/response.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "accdet/quad.hpp"
#include "accdet/residues.hpp"

namespace accdet::response {

namespace {
constexpr double kPi = std::numbers::pi;

// Boltzmann ladder partial sum sum_{n=1}^{N} e^{-2 pi n omega / a}
double ladder_sum(double omega, double a, int N) {
    const double x = std::exp(-2.0 * kPi * omega / a);
    if (N <= 0) return 0.0;
    return x * (1.0 - std::pow(x, N)) / (1.0 - x);
}
}  // namespace

void DetectorConfig::validate() const {
    correlator().validate();
    if (!(omega > 0.0)) throw std::domain_error("DetectorConfig: omega must be positive (excitation)");
    if (!(L > 0.0)) throw std::domain_error("DetectorConfig: L must be positive");
}

RungShape rung_shape(const DetectorConfig& cfg, double T, double tol, int n) {
    cfg.validate();
    const auto cc = cfg.correlator();
    const double C = std::cosh(cfg.a * T);
    const double omega = cfg.omega;

    // octant integral in polar transverse coordinates:
    //   (1/pi^3) int du int rho drho [d+ sin(w th+)/q+ - d- sin(w th-)/q-]
    //            / sqrt(u^2 cosh^2 aT + rho^2)
    // with both semi-infinite axes compactified by s -> s/(1-s)
    auto integrand = [&](const double* s) -> double {
        const auto [u, ju] = quad::mapped_axis(s[0]);
        const auto [rho, jr] = quad::mapped_axis(s[1]);
        if (u == 0.0 && rho == 0.0) return 0.0;
        const auto term = residues::residue_weights(n, u, rho, 0.0, T, cc);
        const double qp = std::sqrt(1.0 + term.u_plus * term.u_plus);
        const double qm = std::sqrt(1.0 + term.u_minus * term.u_minus);
        const double thp = (2.0 / cfg.a) * std::asinh(term.u_plus);
        const double thm = (2.0 / cfg.a) * std::asinh(term.u_minus);
        const double bracket = term.delta_plus * std::sin(omega * thp) / qp -
                               term.delta_minus * std::sin(omega * thm) / qm;
        const double den = std::sqrt(u * u * C * C + rho * rho);
        return bracket / den * rho * ju * jr;
    };

    quad::QuadRegion region;
    region.lo = {0.0, 0.0};
    region.hi = {1.0 - 1e-7, 1.0 - 1e-7};
    region.rel_tol = tol;
    region.abs_tol = 1e-16;
    region.max_cells = 60000;
    auto q = quad::adaptive_nd_real(integrand, region);

    RungShape out;
    out.value = q.real() / std::pow(kPi, 3);
    out.err = q.err / std::pow(kPi, 3);
    out.converged = q.ok();
    return out;
}

ResponseResult transition_probability(const DetectorConfig& cfg, double tol) {
    cfg.validate();
    if (!(tol > 0.0)) throw std::domain_error("transition_probability: tol must be positive");

    const int n_tol = residues::ladder_count_tolerance(cfg.omega, cfg.a);
    const int n_window_max =
        residues::ladder_count(residues::window_halfwidth(cfg.L, 0.5 * cfg.L), cfg.a);
    const int n_max = std::min(n_tol, n_window_max);

    // rung-activation boundaries partition (0, L) into segments of constant N
    std::vector<double> cuts = {0.0, cfg.L};
    for (int n = 1; n <= n_max; ++n) {
        const double tn = kPi * n / cfg.a;
        if (tn < 0.5 * cfg.L) {
            cuts.push_back(tn);
            cuts.push_back(cfg.L - tn);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double prob = 0.0, err = 0.0;
    bool converged = true;
    const double shape_tol = std::max(tol, 1e-6);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        const int N = std::min(
            n_tol, residues::ladder_count(residues::window_halfwidth(cfg.L, mid), cfg.a));
        if (N < 1) continue;
        const double coef = ladder_sum(cfg.omega, cfg.a, N);

        auto seg = [&](const double* T) -> double {
            auto rs = rung_shape(cfg, T[0], shape_tol);
            if (!rs.converged) converged = false;
            return rs.value;
        };
        quad::QuadRegion region;
        region.lo = {cuts[i]};
        region.hi = {cuts[i + 1]};
        region.rel_tol = std::max(tol, 1e-5);
        region.abs_tol = 1e-16;
        region.max_cells = 400;
        auto q = quad::adaptive_nd_real(seg, region);
        prob += coef * q.real();
        err += coef * (q.err + shape_tol * std::abs(q.real()));
        if (!q.ok()) converged = false;
    }

    ResponseResult out;
    out.probability = prob;
    out.rate = prob / cfg.L;
    out.quad_err = err;
    out.ladder_truncation = n_max;
    out.flags = converged ? "" : "budget_exhausted";
    out.config = cfg;
    return out;
}

ResponseResult stationary_rate(const DetectorConfig& cfg, double tol) {
    cfg.validate();
    const int n_tol = residues::ladder_count_tolerance(cfg.omega, cfg.a);
    const double coef = ladder_sum(cfg.omega, cfg.a, n_tol);

    // small-T average of the rung shape (packet still point-like, ladder
    // depth unconstrained by the switch-on window)
    const double T_p = 0.25 / cfg.a;
    bool converged = true;
    const double shape_tol = std::max(tol, 1e-6);
    auto f = [&](const double* T) -> double {
        auto rs = rung_shape(cfg, T[0], shape_tol);
        if (!rs.converged) converged = false;
        return rs.value;
    };
    quad::QuadRegion region;
    region.lo = {0.0};
    region.hi = {T_p};
    region.rel_tol = std::max(tol, 1e-5);
    region.abs_tol = 1e-16;
    region.max_cells = 200;
    auto q = quad::adaptive_nd_real(f, region);
    const double shape_avg = q.real() / T_p;
    const double shape_err = (q.err + shape_tol * std::abs(q.real())) / T_p;

    ResponseResult out;
    out.probability = coef * shape_avg * cfg.L;  // plateau-extrapolated
    out.rate = coef * shape_avg;
    out.quad_err = coef * shape_err;
    out.ladder_truncation = n_tol;
    out.flags = (converged && q.ok()) ? "" : "budget_exhausted";
    out.config = cfg;
    return out;
}

double unruh_rate_closed_form(double omega, double a, int N) {
    if (N < 1) throw std::domain_error("unruh_rate_closed_form: N must be >= 1");
    return omega / (2.0 * kPi) * ladder_sum(omega, a, N);
}

double unruh_rate_closed_form(double omega, double a) {
    return omega / (2.0 * kPi) / (std::exp(2.0 * kPi * omega / a) - 1.0);
}

ClassicalFirstSweep limit_sweep_classical_first(const DetectorConfig& base,
                                                const std::vector<double>& hbar_grid,
                                                const std::vector<double>& b_grid, double tol) {
    if (hbar_grid.empty() || b_grid.empty())
        throw std::invalid_argument("limit_sweep_classical_first: empty grid");
    for (std::size_t i = 1; i < hbar_grid.size(); ++i)
        if (hbar_grid[i] >= hbar_grid[i - 1])
            throw std::invalid_argument("limit_sweep_classical_first: hbar grid must descend");
    for (std::size_t i = 1; i < b_grid.size(); ++i)
        if (b_grid[i] >= b_grid[i - 1])
            throw std::invalid_argument("limit_sweep_classical_first: b grid must descend");

    ClassicalFirstSweep out;
    auto run_cell = [&](double hbar, double b) {
        DetectorConfig cfg = base;
        cfg.hbar = hbar;
        cfg.b = b;
        SweepCell cell;
        cell.hbar = hbar;
        cell.b = b;
        try {
            auto r = stationary_rate(cfg, tol);
            cell.value = r.rate;
            cell.err = r.quad_err;
            cell.flags = r.flags;
        } catch (const std::exception& e) {
            cell.flags = std::string("error: ") + e.what();
        }
        out.cells.push_back(cell);
    };

    for (double hb : hbar_grid) run_cell(hb, base.b);
    for (double b : b_grid) run_cell(hbar_grid.back(), b);

    const auto& last = out.cells.back();
    out.final_rate = last.value;
    out.final_err = last.err;
    out.target = unruh_rate_closed_form(base.omega, base.a,
                                        residues::ladder_count_tolerance(base.omega, base.a));
    return out;
}

PointFirstSweep limit_sweep_point_first(const DetectorConfig& base, const std::vector<double>& b_grid,
                                        double tol) {
    if (b_grid.size() < 3) throw std::invalid_argument("limit_sweep_point_first: need >= 3 b cells");
    if (!(base.hbar > 0.0)) throw std::domain_error("limit_sweep_point_first: hbar must be positive");

    PointFirstSweep out;
    std::vector<double> lx, ly;
    for (double b : b_grid) {
        DetectorConfig cfg = base;
        cfg.b = b;
        SweepCell cell;
        cell.hbar = base.hbar;
        cell.b = b;
        try {
            auto r = transition_probability(cfg, tol);
            cell.value = r.probability;
            cell.err = r.quad_err;
            cell.flags = r.flags;
            if (r.probability <= 10.0 * r.quad_err || r.probability <= 0.0) {
                cell.flags += cell.flags.empty() ? "noise_floor" : "|noise_floor";
            } else {
                lx.push_back(std::log(b));
                ly.push_back(std::log(r.probability));
            }
        } catch (const std::exception& e) {
            cell.flags = std::string("error: ") + e.what();
        }
        out.cells.push_back(cell);
    }
    if (lx.size() < 3)
        throw std::runtime_error("limit_sweep_point_first: too few cells above the noise floor");

    // least squares ln P = c0 + c1 ln b
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    out.exponent = (n * sxy - sx * sy) / denom;
    out.intercept = (sy * sxx - sx * sxy) / denom;
    double ss = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (out.intercept + out.exponent * lx[i]);
        ss += r * r;
    }
    out.exponent_stderr =
        (lx.size() > 2) ? std::sqrt(ss / (n - 2.0) * n / denom) : 0.0;
    out.extrapolated_p0 = 0.0;  // positive exponent: fit vanishes at b = 0
    return out;
}

RateFit rate_per_unit_time(const DetectorConfig& cfg, const std::vector<double>& L_grid, double tol) {
    if (L_grid.size() < 3) throw std::invalid_argument("rate_per_unit_time: need >= 3 L values");
    for (std::size_t i = 1; i < L_grid.size(); ++i)
        if (L_grid[i] <= L_grid[i - 1])
            throw std::invalid_argument("rate_per_unit_time: L grid must increase");

    RateFit out;
    std::vector<double> ps;
    for (double L : L_grid) {
        DetectorConfig c = cfg;
        c.L = L;
        ps.push_back(transition_probability(c, tol).probability);
    }
    out.probabilities = ps;

    const double n = static_cast<double>(ps.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        sx += L_grid[i];
        sy += ps[i];
        sxx += L_grid[i] * L_grid[i];
        sxy += L_grid[i] * ps[i];
    }
    const double denom = n * sxx - sx * sx;
    out.rate = (n * sxy - sx * sy) / denom;
    const double c0 = (sy * sxx - sx * sxy) / denom;
    double ss = 0, pmax = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const double r = ps[i] - (c0 + out.rate * L_grid[i]);
        ss += r * r;
        pmax = std::max(pmax, std::abs(ps[i]));
    }
    out.residual = (pmax > 0.0) ? std::sqrt(ss / n) / pmax : 0.0;
    if (out.residual > 0.05)
        throw std::runtime_error("rate_per_unit_time: non-linear growth of P(L) detected");
    return out;
}

}  // namespace accdet::response
