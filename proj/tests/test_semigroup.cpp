#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "caloric/error.hpp"
#include "caloric/semigroup.hpp"

using namespace caloric;

namespace {
double phi1(double t, double x) { return std::exp(-x * x / (4 * t)) / std::sqrt(4 * std::numbers::pi * t); }

double max_abs_diff(const Samples& a, const Samples& b) {
    double m = 0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

const HeatOperatorConfig kKernel{};
const HeatOperatorConfig kSpectral{HeatMethod::spectral_multiplier, 10.0, true};
}  // namespace

TEST_CASE("constants are preserved by both methods") {
    for (int dim : {1, 2}) {
        SpatialGrid g(dim, 8.0, dim == 1 ? 0.05 : 0.2, BoundaryMode::periodic);
        Samples one(g.size(), 1.0);
        for (const auto& cfg : {kKernel, kSpectral}) {
            auto u = heat_evolve(g, one, 0.1, cfg);
            for (double v : u) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
            auto du = heat_evolve_gradient(g, one, 0.1, cfg);
            for (const auto& c : du) {
                for (double v : c) CHECK(std::abs(v) < 1e-13);
            }
        }
    }
}

TEST_CASE("eigenmode decays exactly under the spectral method") {
    SpatialGrid g(1, std::numbers::pi, 2 * std::numbers::pi / 64, BoundaryMode::periodic);
    for (double w : {1.0, 3.0}) {
        auto f = sample(g, [w](const Point& x) { return std::sin(w * x[0]); });
        const double t = 0.7;
        auto u = heat_evolve(g, f, t, kSpectral);
        auto du = heat_evolve_gradient(g, f, t, kSpectral);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double x = g.coordinate(k);
            CHECK(std::abs(u[k] - std::exp(-w * w * t) * std::sin(w * x)) <= 1e-8 * std::exp(-w * w * t));
            CHECK(std::abs(du[0][k] - w * std::exp(-w * w * t) * std::cos(w * x)) <= 1e-8);
        }
    }
}

TEST_CASE("kernel gradient of sin matches e^{-t} cos") {
    SpatialGrid g(1, 10 * std::numbers::pi, 0.02, BoundaryMode::periodic);
    auto f = sample(g, [](const Point& x) { return std::sin(x[0]); });
    auto du = heat_evolve_gradient(g, f, 0.5, kKernel);
    double err = 0;
    for (std::size_t k = 0; k < g.size(); ++k) err = std::max(err, std::abs(du[0][k] - std::exp(-0.5) * std::cos(g.coordinate(k))));
    CHECK(err < 1e-6);
}

TEST_CASE("heat kernel at s evolves to heat kernel at s+t") {
    SpatialGrid g(1, 20.0, 0.05, BoundaryMode::zero_padded);
    auto f = sample(g, [](const Point& x) { return phi1(0.5, x[0]); });
    Samples exact = sample(g, [](const Point& x) { return phi1(1.5, x[0]); });
    CHECK(max_abs_diff(heat_evolve(g, f, 1.0, kKernel), exact) < 1e-6);
    SpatialGrid gp(1, 20.0, 0.05, BoundaryMode::periodic);
    CHECK(max_abs_diff(heat_evolve(gp, f, 1.0, kSpectral), exact) < 1e-10);
}

TEST_CASE("semigroup law, mass, maximum principle, contraction") {
    SpatialGrid g(2, 6.0, 0.1, BoundaryMode::periodic);
    auto f = sample(g, [](const Point& x) { return std::exp(-x[0] * x[0] - 2 * x[1] * x[1]) * (1 + x[0]) + 0.3 * std::cos(x[1] * std::numbers::pi / 3); });
    const double fmax = *std::max_element(f.begin(), f.end());
    const double fmin = *std::min_element(f.begin(), f.end());
    const double finf = std::max(std::abs(fmax), std::abs(fmin));
    auto us = heat_evolve(g, f, 0.2, kSpectral);
    auto ust = heat_evolve(g, us, 0.3, kSpectral);
    auto u5 = heat_evolve(g, f, 0.5, kSpectral);
    CHECK(max_abs_diff(ust, u5) <= 1e-6 * finf);
    for (const auto& cfg : {kKernel, kSpectral}) {
        auto u = heat_evolve(g, f, 0.08, cfg);
        double m0 = 0, m1 = 0;
        for (std::size_t k = 0; k < f.size(); ++k) {
            m0 += f[k];
            m1 += u[k];
            CHECK(u[k] <= fmax + 1e-10);
            CHECK(u[k] >= fmin - 1e-10);
        }
        CHECK(std::abs(m0 - m1) / f.size() < 1e-10);
        CHECK(grid_l2_norm(g, u) <= grid_l2_norm(g, f));
    }
}

TEST_CASE("methods agree on a bump and the gradient matches finite differences") {
    SpatialGrid g(1, 8.0, 0.02, BoundaryMode::periodic);
    TestFunction h(1, {0.0, 0.0}, 1.0);
    auto f = h.sample(g);
    auto a = heat_evolve(g, f, 0.1, kKernel);
    auto b = heat_evolve(g, f, 0.1, kSpectral);
    CHECK(max_abs_diff(a, b) < 1e-6);
    auto du = heat_evolve_gradient(g, f, 0.1, kKernel);
    auto fd = gradient(g, a);
    const double err = max_abs_diff(du[0], fd[0]);
    CHECK(err < 10 * g.spacing() * g.spacing());
    auto fd2 = gradient(g.refined(), heat_evolve(g.refined(), h.sample(g.refined()), 0.1, kKernel));
    auto du2 = heat_evolve_gradient(g.refined(), h.sample(g.refined()), 0.1, kKernel);
    CHECK(max_abs_diff(du2[0], fd2[0]) < err / 3);
}

TEST_CASE("kernel extent and configuration errors") {
    SpatialGrid g(1, 4.0, 0.05, BoundaryMode::zero_padded);
    Samples f(g.size(), 0.0);
    CHECK_THROWS_AS(heat_evolve(g, f, 1.0, kKernel), Error);
    CHECK_THROWS_AS(heat_evolve(g, f, 0.0, kKernel), Error);
    CHECK_THROWS_AS(heat_evolve(g, f, 0.1, kSpectral), Error);
    HeatOperatorConfig bad;
    bad.truncation_factor = 4;
    SpatialGrid gp(1, 4.0, 0.05, BoundaryMode::periodic);
    CHECK_THROWS_AS(heat_evolve(gp, f, 0.01, bad), Error);
}

TEST_CASE("annulus decay of a unit bump") {
    SpatialGrid g(1, 12.0, 0.01, BoundaryMode::periodic);
    TestFunction h(1, {0.0, 0.0}, 1.0);
    AnnulusScheme scheme(1.0, 1.3, 6);
    auto rep = annulus_decay_check(h, 0.1, scheme, g, kSpectral);
    CHECK(rep.contraction_ok);
    CHECK(rep.rows.size() == 7);
    CHECK(rep.rows[0].norm <= rep.h_l2);
    // decay exponent from independent high-precision runs
    CHECK(rep.fitted_c == doctest::Approx(0.297).epsilon(0.02));
    auto rep2 = annulus_decay_check(h, 0.2, scheme, g, kSpectral);
    CHECK(std::abs(rep2.fitted_c - rep.fitted_c) / rep.fitted_c < 0.1);
    auto repk = annulus_decay_check(h, 0.1, scheme, g, kKernel);
    CHECK(repk.fitted_c == doctest::Approx(rep.fitted_c).epsilon(0.02));
    CHECK_THROWS_AS(annulus_decay_check(h, 0.1, AnnulusScheme(1.0, 1.3, 2), g, kSpectral), Error);
}
