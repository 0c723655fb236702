#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "accdet/quad.hpp"

using namespace accdet;
using Complex = std::complex<double>;
namespace q = accdet::quad;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("adaptive_nd: 3D Gaussian integrates to pi^{3/2}") {
    q::QuadRegion region;
    region.lo = {-8.0, -8.0, -8.0};
    region.hi = {8.0, 8.0, 8.0};
    region.rel_tol = 1e-10;
    auto r = q::adaptive_nd_real(
        [](const double* x) { return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])); }, region);
    CHECK(r.real() == doctest::Approx(std::pow(kPi, 1.5)).epsilon(1e-8));
    CHECK(r.ok());
}

TEST_CASE("adaptive_nd: constant integrand over the unit square") {
    q::QuadRegion region;
    region.lo = {0.0, 0.0};
    region.hi = {1.0, 1.0};
    region.rel_tol = 1e-12;
    auto r = q::adaptive_nd_real([](const double*) { return 1.0; }, region);
    CHECK(r.real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("adaptive_nd: rational-Gaussian test integrand agrees with Monte Carlo") {
    auto f = [](const double* x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return std::exp(-r2) / (1.0 + r2);
    };
    q::QuadRegion region;
    region.lo = {-7.0, -7.0, -7.0};
    region.hi = {7.0, 7.0, 7.0};
    region.rel_tol = 1e-9;
    auto r = q::adaptive_nd_real(f, region);

    // importance-sample the Gaussian factor: E[1/(1+r2)] * pi^{3/2}
    q::GaussianSampler sampler{{0.0, 0.0, 0.0},
                               {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}};
    auto mc = q::mc_importance(
        [](const double* x) {
            const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            return Complex(1.0 / (1.0 + r2), 0.0);
        },
        sampler, 10'000'000, 42);
    const double mc_val = mc.value.real() * std::pow(kPi, 1.5);
    const double mc_err = mc.stderr_est * std::pow(kPi, 1.5);
    CHECK(std::abs(r.real() - mc_val) < 3.0 * mc_err);
}

TEST_CASE("adaptive_nd: error estimates are conservative on a randomized battery") {
    // polynomial-times-Gaussian integrands with known answers
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coeff(0.5, 2.0);
    int covered = 0, total = 0;
    for (int k = 0; k < 40; ++k) {
        const double w = coeff(rng), c = coeff(rng) - 1.25;
        auto f = [&](const double* x) {
            const double d = x[0] - c;
            return (1.0 + d * d) * std::exp(-w * d * d);
        };
        // exact: sqrt(pi/w) (1 + 1/(2w))
        const double exact = std::sqrt(kPi / w) * (1.0 + 0.5 / w);
        q::QuadRegion region;
        region.lo = {c - 12.0 / std::sqrt(w)};
        region.hi = {c + 12.0 / std::sqrt(w)};
        region.rel_tol = 1e-7;
        auto r = q::adaptive_nd_real(f, region);
        ++total;
        if (std::abs(r.real() - exact) <= std::max(r.err, 1e-15)) ++covered;
    }
    CHECK(covered >= (total * 95) / 100);
}

TEST_CASE("gaussian truncation error at k sigma is below exp(-k^2/2)") {
    for (double k_sigma : {6.0, 8.0}) {
        const double w = 1.7;  // weight exp(-w x^2)
        auto bounds = q::gaussian_bounds(0.0, w, k_sigma);
        q::QuadRegion region;
        region.lo = {bounds[0]};
        region.hi = {bounds[1]};
        region.rel_tol = 1e-12;
        auto r = q::adaptive_nd_real([&](const double* x) { return std::exp(-w * x[0] * x[0]); },
                                     region);
        const double exact = std::sqrt(kPi / w);
        CHECK(std::abs(r.real() - exact) / exact < std::exp(-0.5 * k_sigma * k_sigma));
    }
}

TEST_CASE("oscillatory_1d: full periods of cos integrate to zero") {
    auto r = q::oscillatory_1d([](double t) { return Complex(std::cos(5.0 * t), 0.0); }, -kPi, kPi,
                               5.0, {}, 1e-12, 1e-13);
    CHECK(std::abs(r.value) < 1e-10);
}

TEST_CASE("oscillatory_1d: Fourier transform of a Gaussian") {
    // int e^{-t^2} e^{-i w t} dt = sqrt(pi) e^{-w^2/4}; at w = 2: sqrt(pi)/e
    const double omega = 2.0;
    auto r = q::oscillatory_1d(
        [omega](double t) { return std::exp(Complex(-t * t, -omega * t)); }, -10.0, 10.0, omega, {},
        1e-12, 1e-14);
    CHECK(r.value.real() == doctest::Approx(std::sqrt(kPi) * std::exp(-1.0)).epsilon(1e-9));
    CHECK(std::abs(r.value.imag()) < 1e-10);
    CHECK(r.value.real() == doctest::Approx(0.652049).epsilon(1e-5));
}

TEST_CASE("oscillatory_1d: regulated pole matches the residue prediction after extrapolation") {
    // int e^{-t^2} / (t - t0 - i eps) dt -> PV + i pi e^{-t0^2}; the imaginary
    // part extrapolates to pi e^{-t0^2}
    const double t0 = 0.3;
    auto val = [&](double eps) {
        auto r = q::oscillatory_1d(
            [&](double t) { return std::exp(-t * t) / Complex(t - t0, -eps); }, -12.0, 12.0, 1.0,
            {t0}, 1e-11, 1e-14);
        return r.value;
    };
    const Complex v = q::richardson3(val(1e-3), val(5e-4), val(2.5e-4));
    CHECK(v.imag() == doctest::Approx(kPi * std::exp(-t0 * t0)).epsilon(1e-3));
}

TEST_CASE("mc_importance: normalization, determinism, and 1/n variance") {
    q::GaussianSampler sampler{{0.0}, {1.0 / std::sqrt(2.0)}};
    auto f = [](const double*) { return Complex(1.0, 0.0); };
    auto r = q::mc_importance(f, sampler, 100'000, 11);
    CHECK(r.value.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.stderr_est == doctest::Approx(0.0));

    // determinism: identical seeds give bit-identical results
    auto g = [](const double* x) { return Complex(x[0] * x[0], std::sin(x[0])); };
    auto r1 = q::mc_importance(g, sampler, 50'000, 123);
    auto r2 = q::mc_importance(g, sampler, 50'000, 123);
    CHECK(r1.value.real() == r2.value.real());
    CHECK(r1.value.imag() == r2.value.imag());
    CHECK(r1.stderr_est == r2.stderr_est);

    // doubling n halves the variance (stderr ratio ~ sqrt(2))
    auto s1 = q::mc_importance(g, sampler, 200'000, 5);
    auto s2 = q::mc_importance(g, sampler, 400'000, 6);
    CHECK(s1.stderr_est / s2.stderr_est == doctest::Approx(std::sqrt(2.0)).epsilon(0.1));
}

TEST_CASE("mc_importance: log-variance slope vs n is -1") {
    q::GaussianSampler sampler{{0.0}, {1.0}};
    auto g = [](const double* x) { return Complex(std::cos(3.0 * x[0]) + x[0] * x[0], 0.0); };
    std::vector<double> ns = {5e4, 1e5, 2e5, 4e5, 8e5};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        auto r = q::mc_importance(g, sampler, static_cast<std::size_t>(ns[i]), 1000 + i);
        const double x = std::log(ns[i]);
        const double y = std::log(r.stderr_est * r.stderr_est);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(ns.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.1));
}
