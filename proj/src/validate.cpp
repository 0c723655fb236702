#include "accdet/validate.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "accdet/correlator.hpp"
#include "accdet/kinematics.hpp"
#include "accdet/quad.hpp"
#include "accdet/residues.hpp"
#include "accdet/response.hpp"
#include "accdet/wavepacket.hpp"

namespace accdet::validate {

namespace {

constexpr double kPi = std::numbers::pi;
using Complex = std::complex<double>;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

struct Timer {
    double start = now_seconds();
    double elapsed() const { return now_seconds() - start; }
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

}  // namespace

CriterionResult criterion_packet_oracle() {
    Timer timer;
    CriterionResult out{1, "packet-propagation oracle (closed form vs PDE)", false, "", 0.0};

    wavepacket::PacketConfig cfg{1.0, 1.0, 0.5, 1.0, 1.0};
    double worst = 0.0;
    for (double tau : {0.5, 1.0}) {
        // grid wide enough that the boundary density is < 1e-12 of the peak
        wavepacket::GridSpec grid{-18.0, 21.0, 4000, static_cast<std::size_t>(2000 * tau + 0.5)};
        auto pde = wavepacket::pde_oracle_evolve(cfg, grid, tau);
        const auto dens = wavepacket::evolve_density(cfg, tau);
        double sup_diff = 0.0, sup_val = 0.0;
        for (std::size_t i = 0; i < pde.z.size(); ++i) {
            const double d = pde.z[i] - dens.z_c;
            const double closed = dens.alpha / std::sqrt(kPi) * std::exp(-dens.alpha * dens.alpha * d * d);
            sup_diff = std::max(sup_diff, std::abs(closed - pde.density[i]));
            sup_val = std::max(sup_val, closed);
        }
        worst = std::max(worst, sup_diff / sup_val);
    }
    out.seconds = timer.elapsed();
    out.pass = worst < 1e-3 && out.seconds < 60.0;
    out.detail = "sup-norm rel err = " + fmt(worst) + " (< 1e-3), runtime " + fmt(out.seconds) + " s";
    return out;
}

CriterionResult criterion_gaussian_reduction() {
    Timer timer;
    CriterionResult out{2, "Gaussian reduction (reduced 3D vs 6D Monte Carlo)", false, "", 0.0};

    correlator::CorrelatorConfig cfg;  // m=1, hbar=1, a=1, b=0.5, z0=1
    const double points[5][2] = {{0.3, 0.4}, {0.7, 1.1}, {1.2, 0.8}, {1.7, 1.6}, {2.0, 2.0}};
    const double eps0 = 0.2;
    const std::size_t n_mc = 2'000'000;

    double worst_sigma = 0.0, worst_rel_stderr = 0.0;
    bool ok = true;
    for (int k = 0; k < 5; ++k) {
        const double t = points[k][0], T = points[k][1];
        Complex red[3], mc[3];
        double red_err = 0.0, mc_var = 0.0;
        for (int j = 0; j < 3; ++j) {
            const double eps = eps0 / std::pow(2.0, j);
            auto r = correlator::correlator_reduced(t, T, cfg, eps, 1e-6);
            red[j] = r.value;
            red_err = std::max(red_err, r.err);
            auto m = correlator::correlator_full_oracle(t, T, cfg, eps, n_mc,
                                                        0x5eedULL + 977u * k + 13u * j);
            mc[j] = m.value;
            // Richardson combination (8 v3 - 6 v2 + v1)/3: variances add in quadrature
            const double w = (j == 0) ? 1.0 / 3.0 : (j == 1 ? 2.0 : 8.0 / 3.0);
            mc_var += w * w * m.err * m.err;
        }
        const Complex red_x = quad::richardson3(red[0], red[1], red[2]);
        const Complex mc_x = quad::richardson3(mc[0], mc[1], mc[2]);
        const double mc_stderr = std::sqrt(mc_var);
        const double combined = std::sqrt(mc_stderr * mc_stderr + red_err * red_err);
        const double diff = std::abs(red_x - mc_x);
        worst_sigma = std::max(worst_sigma, diff / combined);
        worst_rel_stderr = std::max(worst_rel_stderr, mc_stderr / std::abs(mc_x));
        if (diff > 3.0 * combined) ok = false;
    }
    if (worst_rel_stderr >= 0.01) ok = false;
    out.seconds = timer.elapsed();
    out.pass = ok;
    out.detail = "max |diff|/sigma_combined = " + fmt(worst_sigma) +
                 " (< 3), max MC stderr/|G| = " + fmt(worst_rel_stderr) + " (< 0.01)";
    return out;
}

CriterionResult criterion_residue_oracle() {
    Timer timer;
    CriterionResult out{3, "residue ladder vs direct t-quadrature", false, "", 0.0};

    correlator::CorrelatorConfig cfg;
    std::mt19937_64 rng(20240517ULL);
    std::uniform_real_distribution<double> coord(0.05, 1.0), time_d(0.8, 2.5);

    const double halfwidth = 12.0 * kPi / cfg.a;
    const int N = residues::ladder_count(halfwidth, cfg.a);
    const double woa[3] = {0.5, 1.0, 2.0};

    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double u = coord(rng), p = coord(rng), r = coord(rng), T = time_d(rng);
        const double omega = woa[k % 3] * cfg.a;
        const int n_eff = std::min(N, residues::ladder_count_tolerance(omega, cfg.a));
        const Complex ladder = residues::inner_t_integral(omega, T, u, p, r, cfg, n_eff);
        const auto oracle = residues::direct_t_oracle(omega, T, u, p, r, cfg, 1e-3, halfwidth);
        worst = std::max(worst, std::abs(ladder - oracle.value) / std::abs(oracle.value));
    }

    // Window-convergence (contour-arc remainder) of the direct integral.
    const double L = 20.0 * kPi / cfg.a;
    const Complex vL = residues::direct_t_integral(1.0, 1.5, 0.4, 0.3, 0.2, cfg, 1e-3, L);
    const Complex v2L = residues::direct_t_integral(1.0, 1.5, 0.4, 0.3, 0.2, cfg, 1e-3, 2.0 * L);
    const double arc = std::abs(vL - v2L) / std::abs(vL);

    out.seconds = timer.elapsed();
    const bool main_ok = worst < 1e-3;
    const bool arc_ok = arc < 1e-3;
    out.pass = main_ok && arc_ok;
    out.detail = "max rel diff = " + fmt(worst) + " (< 1e-3 required; the smeared weights carry " +
                 "branch cuts above the pole ladder, see validation notes), arc remainder = " +
                 fmt(arc) + " (< 1e-3)";
    return out;
}

CriterionResult criterion_unruh_recovery() {
    Timer timer;
    CriterionResult out{4, "Unruh recovery (classical-then-point sweep)", false, "", 0.0};

    // heavy detector: keeps the Compton scale below the packet scale at the
    // bottom of the pinned (hbar, b) grids
    response::DetectorConfig base;
    base.m = 2.0;
    base.a = 1.0;
    base.z0 = 1.0;
    base.b = 0.5;

    auto logspace = [](double from, double to, int n) {
        std::vector<double> g(n);
        for (int i = 0; i < n; ++i)
            g[i] = from * std::pow(to / from, static_cast<double>(i) / (n - 1));
        return g;
    };
    const auto hbar_grid = logspace(1.0, 1e-3, 7);
    const auto b_grid = logspace(0.5, 1e-2, 6);

    bool ok = true;
    std::string detail;
    for (double woa : {1.0 / (2.0 * kPi), 1.0 / kPi}) {
        response::DetectorConfig cfg = base;
        cfg.omega = woa * cfg.a;
        auto sweep = response::limit_sweep_classical_first(cfg, hbar_grid, b_grid, 1e-6);
        const double target = response::unruh_rate_closed_form(cfg.omega, cfg.a);
        const double rel = std::abs(sweep.final_rate / target - 1.0);

        // Planck slope: log of the per-rung term vs n
        response::DetectorConfig deep = cfg;
        deep.hbar = hbar_grid.back();
        deep.b = b_grid.back();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n_fit = 5;
        for (int n = 1; n <= n_fit; ++n) {
            auto rs = response::rung_shape(deep, 0.125 / deep.a, 1e-6, n);
            const double term = std::exp(-2.0 * kPi * n * cfg.omega / cfg.a) * rs.value;
            sx += n;
            sy += std::log(term);
            sxx += n * n;
            sxy += n * std::log(term);
        }
        const double slope = (n_fit * sxy - sx * sy) / (n_fit * sxx - sx * sx);
        const double slope_rel = std::abs(slope / (-2.0 * kPi * cfg.omega / cfg.a) - 1.0);

        if (rel >= 0.01 || slope_rel >= 0.02) ok = false;
        detail += "w/a=" + fmt(woa) + ": |rate/target-1| = " + fmt(rel) +
                  " (< 0.01), slope dev = " + fmt(slope_rel) + " (< 0.02); ";
    }
    out.seconds = timer.elapsed();
    out.pass = ok;
    out.detail = detail;
    return out;
}

CriterionResult criterion_decoupling() {
    Timer timer;
    CriterionResult out{5, "decoupling (point-first b^3 scaling)", false, "", 0.0};

    response::DetectorConfig base;
    base.m = 1.0;
    base.hbar = 1.0;
    base.a = 1.0;
    base.z0 = 1.0;
    base.omega = 1.0;
    base.L = 4.0 * kPi;

    std::vector<double> b_grid;
    for (double e : {-1.0, -1.5, -2.0, -2.5, -3.0}) b_grid.push_back(std::pow(10.0, e));
    auto sweep = response::limit_sweep_point_first(base, b_grid, 1e-6);

    // extrapolated P(0): the fitted power law at the smallest grid point over 10
    const double p_small = std::exp(sweep.intercept + sweep.exponent * std::log(b_grid.back() / 10.0));
    const double err_floor = sweep.cells.back().err;

    out.seconds = timer.elapsed();
    const bool exp_ok = std::abs(sweep.exponent - 3.0) < 0.1;
    const bool zero_ok = p_small < std::max(err_floor, 1e-12);
    out.pass = exp_ok && zero_ok;
    out.detail = "fitted exponent = " + fmt(sweep.exponent) + " (3 +- 0.1), P(b->0) extrapolates to " +
                 fmt(p_small) + " (consistent with 0)";
    return out;
}

CriterionResult criterion_invariant_battery() {
    Timer timer;
    CriterionResult out{6, "invariant battery", false, "", 0.0};
    std::string detail;
    bool ok = true;

    // (a) packet normalization via quadrature
    {
        wavepacket::PacketConfig cfg{1.0, 1.0, 0.5, 1.0, 1.0};
        double worst = 0.0;
        for (double tau : {0.3, 1.0, 2.0}) {
            const auto d = wavepacket::evolve_density(cfg, tau);
            quad::QuadRegion region;
            const auto bounds = quad::gaussian_bounds(d.z_c, d.alpha * d.alpha, 9.0);
            region.lo = {bounds[0]};
            region.hi = {bounds[1]};
            region.rel_tol = 1e-12;
            auto q = quad::adaptive_nd_real(
                [&](const double* z) {
                    return std::norm(wavepacket::evolve_amplitude(cfg, z[0], tau));
                },
                region);
            worst = std::max(worst, std::abs(q.real() - 1.0));
        }
        ok = ok && worst < 1e-8;
        detail += "normalization err " + fmt(worst) + " (<1e-8); ";
    }

    // (b) kernel semigroup via rotated-contour composition
    {
        wavepacket::PacketConfig cfg{1.0, 1.0, 0.5, 1.0, 1.0};
        const double tau1 = 0.4, tau2 = 0.7, z = 0.35, zp = -0.6;
        const double b1 = wavepacket::beta(cfg.m, cfg.hbar, cfg.a, tau1);
        const double b2 = wavepacket::beta(cfg.m, cfg.hbar, cfg.a, tau2);
        const double c1 = std::cosh(cfg.a * tau1), c2 = std::cosh(cfg.a * tau2);
        const double qc = b1 * c1 + b2 * c2;
        const double ystar = (b1 * z + b2 * zp) / qc;  // stationary point of the phase
        const Complex rot = std::exp(Complex(0.0, kPi / 4.0));
        auto f = [&](const double* s) -> Complex {
            const Complex y = ystar + rot * s[0];
            const Complex k1 = std::sqrt(Complex(0.0, -b1 / kPi)) *
                               std::exp(Complex(0.0, b1) * ((z * z + y * y) * c1 - 2.0 * z * y));
            const Complex k2 = std::sqrt(Complex(0.0, -b2 / kPi)) *
                               std::exp(Complex(0.0, b2) * ((y * y + zp * zp) * c2 - 2.0 * y * zp));
            return k1 * k2 * rot;
        };
        quad::QuadRegion region;
        const double span = 9.0 / std::sqrt(qc);
        region.lo = {-span};
        region.hi = {span};
        region.rel_tol = 1e-10;
        auto q = quad::adaptive_nd(f, region);
        const Complex direct = wavepacket::kernel(cfg, z, zp, tau1 + tau2);
        const double rel = std::abs(q.value - direct) / std::abs(direct);
        ok = ok && rel < 1e-6;
        detail += "semigroup rel err " + fmt(rel) + " (<1e-6); ";
    }

    // (c) correlator Hermiticity: conj(G(t,T)) = G(-t,T)
    {
        correlator::CorrelatorConfig cfg;
        std::mt19937_64 rng(77ULL);
        std::uniform_real_distribution<double> dist(0.2, 2.0);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const double t = dist(rng), T = dist(rng);
            auto gp = correlator::correlator_reduced(t, T, cfg, 0.15, 3e-8);
            auto gm = correlator::correlator_reduced(-t, T, cfg, 0.15, 3e-8);
            worst = std::max(worst,
                             std::abs(std::conj(gp.value) - gm.value) / std::abs(gp.value));
        }
        ok = ok && worst < 1e-6;
        detail += "hermiticity rel diff " + fmt(worst) + " (<1e-6); ";
    }

    // (d) pole-branch product identity
    {
        std::mt19937_64 rng(99ULL);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        std::uniform_real_distribution<double> td(0.0, 3.0);
        double worst = 0.0;
        const double a = 1.3;
        for (int k = 0; k < 10000; ++k) {
            const double u = dist(rng), p = dist(rng), r = dist(rng), T = td(rng);
            if (u == 0.0 && p == 0.0 && r == 0.0) continue;
            const auto br = residues::u_pm(u, p, r, T, a);
            const double lhs = br.u_plus * br.u_minus;
            const double rhs = -0.25 * a * a * (u * u + p * p + r * r);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
        ok = ok && worst < 1e-12;
        detail += "pole product rel err " + fmt(worst) + " (<1e-12); ";
    }

    // (e) non-negativity of the probability within error bars
    {
        bool nn = true;
        for (double b : {0.5, 0.1}) {
            response::DetectorConfig cfg;
            cfg.b = b;
            cfg.omega = 1.0;
            cfg.L = 4.0 * kPi;
            auto r = response::transition_probability(cfg, 1e-6);
            if (r.probability < -r.quad_err) nn = false;
        }
        ok = ok && nn;
        detail += std::string("non-negativity ") + (nn ? "ok" : "VIOLATED");
    }

    out.seconds = timer.elapsed();
    out.pass = ok;
    out.detail = detail;
    return out;
}

std::vector<CriterionResult> run_acceptance_battery(std::ostream* log) {
    std::vector<CriterionResult> results;
    using Fn = CriterionResult (*)();
    const Fn fns[] = {criterion_packet_oracle,   criterion_gaussian_reduction,
                      criterion_residue_oracle,  criterion_unruh_recovery,
                      criterion_decoupling,      criterion_invariant_battery};
    for (auto fn : fns) {
        auto r = fn();
        if (log)
            (*log) << "criterion " << r.id << " [" << r.name << "]: " << (r.pass ? "PASS" : "FAIL")
                   << " (" << r.detail << ") [" << r.seconds << " s]\n";
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace accdet::validate
