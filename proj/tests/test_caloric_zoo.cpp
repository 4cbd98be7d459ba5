#include <doctest.h>

#include <cmath>
#include <numbers>

#include "caloric/caloric_zoo.hpp"
#include "caloric/error.hpp"
#include "caloric/semigroup.hpp"

using namespace caloric;

namespace {
// Midpoint quadrature of f(x) phi(x) on [-W, W] as an independent pairing oracle.
template <typename F>
double quad_pairing(F f, const SchwartzProbe& phi, double W = 30.0, double h = 1e-3) {
    double acc = 0;
    for (double x = -W; x < W; x += h) {
        const Point p{x + h / 2, 0.0};
        acc += f(p) * phi.value(p) * h;
    }
    return acc;
}
}  // namespace

TEST_CASE("closed forms at reference points") {
    CHECK(eval_solution(AnalyticSolution::parse("caloric_polynomial:m=2", 1), 1.0, {0.0, 0.0}) == doctest::Approx(2.0));
    CHECK(eval_solution(AnalyticSolution::parse("gaussian_kernel:t0=1,x0=0", 1), 1.0, {0.0, 0.0}) ==
          doctest::Approx(1.0 / std::sqrt(8 * std::numbers::pi)));
    CHECK(eval_solution(AnalyticSolution::parse("exponential:mu=1", 1), 0.5, {1.0, 0.0}) == doctest::Approx(std::exp(1.5)));
    CHECK(eval_solution(AnalyticSolution::parse("eigenmode:omega=2", 1), 0.25, {0.3, 0.0}) ==
          doctest::Approx(std::exp(-1.0) * std::sin(0.6)));
    CHECK(eval_solution(AnalyticSolution::parse("erf_front", 1), 0.25, {0.5, 0.0}) == doctest::Approx(std::erf(0.5)));
    CHECK_THROWS_AS(AnalyticSolution::parse("wave:c=1", 1), Error);
    CHECK_THROWS_AS(AnalyticSolution::parse("eigenmode:freq=1", 1), Error);
    CHECK_THROWS_AS(eval_solution(AnalyticSolution::tychonoff(1), 1.5, {0.0, 0.0}), Error);
    CHECK(AnalyticSolution::parse("tychonoff:K=40", 1).id() == "tychonoff:K=40");
}

TEST_CASE("gradients agree with finite differences") {
    for (const char* id : {"gaussian_kernel:t0=0.5,x0=0.2", "caloric_polynomial:m=3", "exponential:mu=0.7",
                           "eigenmode:omega=1.5", "erf_front", "tychonoff:K=40"}) {
        auto sol = AnalyticSolution::parse(id, 1);
        const double t = 0.4, x = 0.9, h = 1e-5;
        const double fd = (sol.value(t, {x + h, 0}) - sol.value(t, {x - h, 0})) / (2 * h);
        CHECK(sol.gradient(t, {x, 0})[0] == doctest::Approx(fd).epsilon(1e-6));
    }
    auto s2 = AnalyticSolution::parse("eigenmode:omega=1;2", 2);
    const Point p{0.3, -0.4};
    const double h = 1e-5;
    const double fd = (s2.value(0.2, {p[0], p[1] + h}) - s2.value(0.2, {p[0], p[1] - h})) / (2 * h);
    CHECK(s2.gradient(0.2, p)[1] == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("heat residuals of the zoo") {
    ProbeRegion r{0.5, 1.0, -2.0, 2.0};
    CHECK(heat_residual(AnalyticSolution::parse("eigenmode:omega=1", 1), r) <= 1e-5);
    CHECK(heat_residual(AnalyticSolution::parse("exponential:mu=1", 1), r) <= 1e-6 * std::exp(3.0));
    CHECK(heat_residual(AnalyticSolution::parse("gaussian_kernel:t0=1", 2), r) <= 1e-5);
    ProbeRegion quartic = r;
    quartic.order = 4;
    quartic.step = 1e-2;
    CHECK(heat_residual(AnalyticSolution::caloric_polynomial(1, 4), quartic) <= 1e-9);
    ProbeRegion ty{0.2, 0.9, -2.0, 2.0};
    CHECK(heat_residual(AnalyticSolution::tychonoff(1), ty) <= 1e-4);
}

TEST_CASE("flat derivatives match high-precision Taylor coefficients") {
    const auto f = flat_derivatives(0.3, 40);
    CHECK(f[0] == doctest::Approx(0.035673993347252398).epsilon(1e-13));
    CHECK(f[1] == doctest::Approx(0.39637770385835997).epsilon(1e-12));
    CHECK(f[5] == doctest::Approx(1764.0952526541855).epsilon(1e-11));
    CHECK(f[20] == doctest::Approx(-2.7043015933736621e+26).epsilon(1e-9));
    CHECK(f[39] == doctest::Approx(1.7750974788426216e+63).epsilon(1e-8));
}

TEST_CASE("tychonoff series values") {
    for (double t : {0.05, 0.3, 1.0}) CHECK(tychonoff_eval(t, 0.0).value == doctest::Approx(std::exp(-1 / t)));
    CHECK_FALSE(tychonoff_eval(0.3, 0.0).truncated);
    const double a = tychonoff_eval(0.5, 1.0, 30).value;
    const double b = tychonoff_eval(0.5, 1.0, 40).value;
    CHECK(std::abs(a - b) <= 1e-10 * std::abs(b));
    CHECK(b == doctest::Approx(0.40079423229599900773).epsilon(1e-12));
    // high-precision partial sums at t = 0.1
    CHECK(tychonoff_eval(0.1, 2.0).value == doctest::Approx(1.3846175223385057).epsilon(1e-8));
    CHECK(tychonoff_eval(0.1, 4.0).value == doctest::Approx(28285442101504.668).epsilon(1e-8));
    CHECK(tychonoff_eval(0.1, 8.0).value == doctest::Approx(1.1500075579009396e+37).epsilon(1e-8));
    double prev = -1e300;
    for (double x : {2.0, 4.0, 8.0}) {
        const double l = std::log(std::abs(tychonoff_eval(0.1, x).value));
        CHECK(l > prev);
        prev = l;
    }
    CHECK(tychonoff_eval(0.1, 8.0).truncated);
    CHECK_THROWS_AS(tychonoff_eval(0.0, 1.0), Error);
    CHECK_THROWS_AS(tychonoff_eval(0.5, 1.0, 0), Error);
}

TEST_CASE("exact pairings agree with quadrature") {
    const auto probes = default_schwartz_panel(1);
    for (const char* id : {"gaussian_kernel:t0=0.5,x0=0.3", "caloric_polynomial:m=3", "exponential:mu=0.5",
                           "eigenmode:omega=1.3", "erf_front"}) {
        auto sol = AnalyticSolution::parse(id, 1);
        for (const auto& phi : {probes[1], probes[6]}) {
            const double t = 0.2;
            const double q = quad_pairing([&](const Point& x) { return sol.value(t, x); }, phi);
            CHECK(*sol.exact_pairing(t, phi) == doctest::Approx(q).epsilon(1e-8));
        }
    }
    CHECK_FALSE(AnalyticSolution::tychonoff(1).exact_pairing(0.2, probes[0]).has_value());
}

TEST_CASE("datum pairings agree with quadrature") {
    const auto probes = default_schwartz_panel(1);
    const auto odd = probes[1];  // x e^{-x^2/2}
    CHECK(InitialDatum::sign(1).pairing(odd) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(InitialDatum::dirac(1).pairing(probes[0]) == doctest::Approx(1.0));
    for (const char* id : {"sign", "oscillator:omega=2,A=1.5", "schwartz:he=2,sigma=0.7"}) {
        auto d = InitialDatum::parse(id, 1);
        CHECK(d.id() == id);
        for (const auto& phi : probes) {
            const double t = 0.15;
            const double q = quad_pairing([&](const Point& x) { return d.evolved(t, x); }, phi);
            CHECK(d.evolved_pairing(t, phi) == doctest::Approx(q).epsilon(1e-8));
        }
    }
}

TEST_CASE("sampled data evolve to the closed forms") {
    SpatialGrid g(1, 16.0, 0.02, BoundaryMode::periodic);
    HeatOperatorConfig spectral{HeatMethod::spectral_multiplier, 10.0, true};
    HeatOperatorConfig kernel{};
    for (const char* id : {"dirac:x0=0", "oscillator:omega=1.5707963267948966", "schwartz:he=3,sigma=1", "sign"}) {
        auto d = InitialDatum::parse(id, 1);
        for (const auto& cfg : {spectral, kernel}) {
            auto u = heat_evolve(g, d.sample(g), 0.5, cfg);
            double err = 0;
            for (std::size_t k = 0; k < g.size(); ++k) {
                const double x = g.coordinate(k);
                if (std::string(id) == "sign" && std::abs(x) > 8) continue;  // periodic image of the jump
                err = std::max(err, std::abs(u[k] - d.evolved(0.5, {x, 0})));
            }
            INFO(std::string(id));
            CHECK(err <= std::max(1e-6, g.spacing() * g.spacing()));
        }
    }
}
