#include "accdet/quad.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <queue>
#include <random>
#include <stdexcept>

namespace accdet::quad {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr int kKronrodN = 15;
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Gk1dResult {
    Complex value;
    double err;
};

// One GK15 evaluation of f over [a, b] given a row evaluator.
template <typename F>
Gk1dResult gk15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Complex fc = f(center);
    Complex res_k = kWgk[7] * fc;
    Complex res_g = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        Complex f1 = f(center - dx);
        Complex f2 = f(center + dx);
        res_k += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) res_g += kWg[j / 2] * (f1 + f2);
    }
    res_k *= half;
    res_g *= half;
    const double err = std::abs(res_k - res_g);
    return {res_k, err};
}

struct Cell {
    std::vector<double> lo, hi;
    Complex value;
    double err;
    std::uint64_t id;  // creation order; canonical tie-break for determinism
};

struct CellOrder {
    bool operator()(const Cell& a, const Cell& b) const {
        if (a.err != b.err) return a.err < b.err;  // max-heap on error
        return a.id > b.id;                        // older first on ties
    }
};

// Tensor GK15 evaluation over an nd cell (n <= 3): nests gk15 along each axis.
Gk1dResult eval_cell(const std::function<Complex(const double*)>& f, const std::vector<double>& lo,
                     const std::vector<double>& hi) {
    const std::size_t d = lo.size();
    if (d == 1) {
        return gk15([&](double x) { return f(&x); }, lo[0], hi[0]);
    }
    if (d == 2) {
        double err_acc = 0.0;
        auto outer = [&](double x) {
            auto inner = gk15(
                [&](double y) {
                    const double p[2] = {x, y};
                    return f(p);
                },
                lo[1], hi[1]);
            err_acc += inner.err;
            return inner.value;
        };
        auto r = gk15(outer, lo[0], hi[0]);
        // inner errors accumulate over 15 outer nodes; scale to the cell measure
        r.err += err_acc * (hi[0] - lo[0]) / kKronrodN;
        return r;
    }
    if (d == 3) {
        double err_acc = 0.0;
        auto outer = [&](double x) {
            double err_mid = 0.0;
            auto mid = gk15(
                [&](double y) {
                    auto inner = gk15(
                        [&](double z) {
                            const double p[3] = {x, y, z};
                            return f(p);
                        },
                        lo[2], hi[2]);
                    err_mid += inner.err;
                    return inner.value;
                },
                lo[1], hi[1]);
            err_acc += mid.err + err_mid * (hi[1] - lo[1]) / kKronrodN;
            return mid.value;
        };
        auto r = gk15(outer, lo[0], hi[0]);
        r.err += err_acc * (hi[0] - lo[0]) / kKronrodN;
        return r;
    }
    throw std::invalid_argument("adaptive_nd supports 1 <= dim <= 3");
}

}  // namespace

std::array<double, 2> gaussian_bounds(double center, double inv_width_sq, double k_sigma) {
    if (inv_width_sq <= 0.0) throw std::domain_error("gaussian_bounds: weight must be positive");
    const double sigma = 1.0 / std::sqrt(2.0 * inv_width_sq);
    return {center - k_sigma * sigma, center + k_sigma * sigma};
}

QuadResult adaptive_nd(const std::function<Complex(const double*)>& f, const QuadRegion& region) {
    if (region.dim() == 0 || region.hi.size() != region.dim())
        throw std::invalid_argument("adaptive_nd: malformed region");
    for (std::size_t i = 0; i < region.dim(); ++i) {
        if (!(region.lo[i] < region.hi[i]) || !std::isfinite(region.lo[i]) || !std::isfinite(region.hi[i]))
            throw std::invalid_argument("adaptive_nd: bounds must be finite and ordered");
    }

    std::priority_queue<Cell, std::vector<Cell>, CellOrder> heap;
    std::uint64_t next_id = 0;

    auto make_cell = [&](std::vector<double> lo, std::vector<double> hi) {
        auto r = eval_cell(f, lo, hi);
        heap.push(Cell{std::move(lo), std::move(hi), r.value, r.err, next_id++});
    };
    make_cell(region.lo, region.hi);

    Complex total = heap.top().value;
    double total_err = heap.top().err;
    double excluded_err = 0.0;
    bool sliver = false;

    std::size_t cells = 1;
    while (total_err > std::max(region.abs_tol, region.rel_tol * std::abs(total)) &&
           cells < region.max_cells) {
        Cell worst = heap.top();
        heap.pop();

        // split along the widest axis
        std::size_t ax = 0;
        double w = 0.0;
        for (std::size_t i = 0; i < worst.lo.size(); ++i) {
            const double wi = worst.hi[i] - worst.lo[i];
            if (wi > w) {
                w = wi;
                ax = i;
            }
        }
        if (w < region.min_cell_width) {
            // floor reached: exclude the sliver, bound its contribution by the
            // cell estimate itself and carry it in the error budget
            excluded_err += worst.err + std::abs(worst.value);
            total -= worst.value;
            total_err -= worst.err;
            sliver = true;
            continue;
        }
        const double mid = 0.5 * (worst.lo[ax] + worst.hi[ax]);

        total -= worst.value;
        total_err -= worst.err;

        auto lo1 = worst.lo, hi1 = worst.hi, lo2 = worst.lo, hi2 = worst.hi;
        hi1[ax] = mid;
        lo2[ax] = mid;
        auto r1 = eval_cell(f, lo1, hi1);
        auto r2 = eval_cell(f, lo2, hi2);
        total += r1.value + r2.value;
        total_err += r1.err + r2.err;
        heap.push(Cell{std::move(lo1), std::move(hi1), r1.value, r1.err, next_id++});
        heap.push(Cell{std::move(lo2), std::move(hi2), r2.value, r2.err, next_id++});
        ++cells;
    }

    QuadResult out;
    out.value = total;
    out.err = total_err + excluded_err;
    out.cells = cells;
    if (sliver)
        out.flag = QuadFlag::sliver_excluded;
    else if (total_err > std::max(region.abs_tol, region.rel_tol * std::abs(total)))
        out.flag = QuadFlag::budget_exhausted;
    return out;
}

QuadResult adaptive_nd_real(const std::function<double(const double*)>& f, const QuadRegion& region) {
    return adaptive_nd([&f](const double* x) { return Complex(f(x), 0.0); }, region);
}

QuadResult oscillatory_1d(const std::function<Complex(double)>& f, double t_lo, double t_hi,
                          double omega, const std::vector<double>& pole_hints, double rel_tol,
                          double abs_tol, std::size_t max_panels) {
    if (!(t_lo < t_hi)) throw std::invalid_argument("oscillatory_1d: empty window");

    // initial breakpoints: window edges, pole hints, and a graded cluster
    // around each hint so the refinement starts where the integrand peaks
    std::vector<double> pts = {t_lo, t_hi};
    const double span = t_hi - t_lo;
    for (double p : pole_hints) {
        if (p <= t_lo || p >= t_hi) continue;
        pts.push_back(p);
        for (double s : {1e-4, 1e-3, 1e-2, 1e-1}) {
            const double d = s * span;
            if (p - d > t_lo) pts.push_back(p - d);
            if (p + d < t_hi) pts.push_back(p + d);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    // cap panel width at pi/(4 omega)
    const double cap = (omega > 0.0) ? M_PI / (4.0 * omega) : span;
    std::vector<double> edges;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], b = pts[i + 1];
        const int k = std::max(1, static_cast<int>(std::ceil((b - a) / cap)));
        for (int j = 0; j < k; ++j) edges.push_back(a + (b - a) * j / k);
    }
    edges.push_back(t_hi);

    struct Panel {
        double a, b;
        Complex value;
        double err;
        std::uint64_t id;
    };
    struct POrder {
        bool operator()(const Panel& x, const Panel& y) const {
            if (x.err != y.err) return x.err < y.err;
            return x.id > y.id;
        }
    };
    std::priority_queue<Panel, std::vector<Panel>, POrder> heap;
    std::uint64_t next_id = 0;
    Complex total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto r = gk15(f, edges[i], edges[i + 1]);
        total += r.value;
        total_err += r.err;
        heap.push(Panel{edges[i], edges[i + 1], r.value, r.err, next_id++});
    }

    std::size_t panels = edges.size() - 1;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && panels < max_panels) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        total -= worst.value;
        total_err -= worst.err;
        auto r1 = gk15(f, worst.a, mid);
        auto r2 = gk15(f, mid, worst.b);
        total += r1.value + r2.value;
        total_err += r1.err + r2.err;
        heap.push(Panel{worst.a, mid, r1.value, r1.err, next_id++});
        heap.push(Panel{mid, worst.b, r2.value, r2.err, next_id++});
        ++panels;
    }

    QuadResult out;
    out.value = total;
    out.err = total_err;
    out.cells = panels;
    out.flag = (total_err > std::max(abs_tol, rel_tol * std::abs(total))) ? QuadFlag::budget_exhausted
                                                                          : QuadFlag::converged;
    return out;
}

McResult mc_importance(const std::function<Complex(const double*)>& f, const GaussianSampler& sampler,
                       std::size_t n_samples, std::uint64_t seed) {
    const std::size_t d = sampler.mean.size();
    if (d == 0 || sampler.sigma.size() != d)
        throw std::invalid_argument("mc_importance: malformed sampler");
    if (n_samples == 0) throw std::invalid_argument("mc_importance: need samples");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit(0.0, 1.0);

    Complex sum = 0.0;
    double sum_sq = 0.0;  // of |f|^2, for the standard error of the mean
    std::vector<double> x(d);
    for (std::size_t i = 0; i < n_samples; ++i) {
        for (std::size_t k = 0; k < d; ++k) x[k] = sampler.mean[k] + sampler.sigma[k] * unit(rng);
        const Complex v = f(x.data());
        sum += v;
        sum_sq += std::norm(v);
    }
    const double n = static_cast<double>(n_samples);
    const Complex mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - std::norm(mean));
    McResult out;
    out.value = mean;
    out.stderr_est = std::sqrt(var / n);
    out.n = n_samples;
    return out;
}

}  // namespace accdet::quad
