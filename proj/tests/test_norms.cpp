#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "caloric/error.hpp"
#include "caloric/norms.hpp"

using namespace caloric;

namespace {
// sqrt( (1/2)(8 pi)^{-1/2} int_0^1 tau^{-1/2} erf((2 tau)^{-1/2}) dtau ), with tau = v^2 and Simpson.
double heat_kernel_tent_oracle() {
    const int n = 20000;
    auto f = [](double v) { return v == 0 ? 2.0 : 2.0 * std::erf(1.0 / (std::sqrt(2.0) * v)); };
    double s = 0;
    for (int i = 0; i <= n; ++i) s += (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2)) * f(double(i) / n);
    s /= 3.0 * n;
    return std::sqrt(0.5 / std::sqrt(8 * std::numbers::pi) * s);
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}
}  // namespace

TEST_CASE("growth verdicts") {
    CHECK(classify_growth(-0.1, 0.2) == GrowthVerdict::pass);
    CHECK(classify_growth(0.1, 0.95) == GrowthVerdict::pass);
    CHECK(classify_growth(0.1, 0.5) == GrowthVerdict::inconclusive);
    CHECK(classify_growth(0.25, 0.99) == GrowthVerdict::inconclusive);
    CHECK(classify_growth(0.3, 0.99) == GrowthVerdict::fail);
}

TEST_CASE("growth fits of zoo members") {
    SpatialGrid g(1, 10.0, 0.05, BoundaryMode::zero_padded);
    const StripSpec strip(0.1, 0.3);
    const auto times = linspace(0.1, 0.3, 41);
    const auto radii = linspace(0.5, 6.0, 12);
    auto eig = sample_field(AnalyticSolution::eigenmode(1, {1.0, 0.0}), g, times);
    auto fe = strip_growth_fit(eig, strip, radii);
    CHECK(fe.gamma_hat <= 0.01);
    CHECK(fe.verdict == GrowthVerdict::pass);
    for (std::size_t i = 1; i < fe.l2_values.size(); ++i) CHECK(fe.l2_values[i] >= fe.l2_values[i - 1]);

    auto ex = sample_field(AnalyticSolution::exponential(1, {1.0, 0.0}), g, times);
    auto fx = strip_growth_fit(ex, strip, radii);
    CHECK(fx.verdict == GrowthVerdict::pass);
    auto fx_short = strip_growth_fit(ex, strip, linspace(0.5, 3.0, 12));
    CHECK(fx.gamma_hat < fx_short.gamma_hat);  // tends to 0 as the radii grow

    auto ty = sample_field(AnalyticSolution::tychonoff(1), g, times);
    auto ft = strip_growth_fit(ty, strip, radii);
    CHECK(ft.gamma_hat >= 0.25);
    CHECK(ft.verdict == GrowthVerdict::fail);
    CHECK(ft.gamma_hat == doctest::Approx(0.353).epsilon(0.02));  // high-precision series prototype

    auto scaled = strip_growth_fit(ty.scaled(1e-3), strip, radii);
    CHECK(scaled.verdict == ft.verdict);
    CHECK(scaled.gamma_hat == doctest::Approx(ft.gamma_hat).epsilon(1e-9));
    CHECK(scaled.logC_hat == doctest::Approx(ft.logC_hat + std::log(1e-3)).epsilon(1e-9));

    CHECK_THROWS_AS(strip_growth_fit(eig, strip, linspace(0.5, 6.0, 4)), Error);
    CHECK_THROWS_AS(strip_growth_fit(eig, strip, linspace(0.5, 9.0, 6)), Error);
}

TEST_CASE("tent norm of constants and of the heat kernel") {
    SpatialGrid g(1, 8.0, 0.02, BoundaryMode::zero_padded);
    BallFamily fam = BallFamily::lattice(1, 1.0, 0.5, {0.5, 1.0, 2.0});
    auto one = SpaceTimeField::from_function(g, tent_ladder(g, fam), [](double, const Point&) { return 1.0; });
    auto t1 = tent_norm(one, fam);
    CHECK(t1.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(t1.argmax_radius == 2.0);

    const double oracle = heat_kernel_tent_oracle();
    CHECK(oracle == doctest::Approx(0.43).epsilon(0.01));
    BallFamily centered{{{0.0, 0.0}}, {0.5, 1.0, 1.5, 2.0}};
    auto phi = sample_field(AnalyticSolution::gaussian_kernel(1, 0.0), g, tent_ladder(g, centered));
    auto tp = tent_norm(phi, centered);
    CHECK(tp.value == doctest::Approx(oracle).epsilon(0.05));
    for (const auto& b : tp.per_ball) CHECK(b.value == doctest::Approx(oracle).epsilon(0.02));

    // homogeneity and monotonicity
    CHECK(tent_norm(phi.scaled(2.0), centered).value == 2.0 * tp.value);
    CHECK(tent_norm(phi.scaled(-3.7), centered).value == doctest::Approx(3.7 * tp.value).epsilon(1e-14));
    BallFamily bigger = fam;
    bigger.radii.push_back(0.25);
    auto one2 = SpaceTimeField::from_function(g, tent_ladder(g, bigger), [](double t, const Point& x) { return std::exp(-t) * std::sin(x[0]); });
    CHECK(tent_norm(one2, bigger).value >= tent_norm(one2, fam).value);

    BallFamily too_big{{{0.0, 0.0}}, {3.0}};
    CHECK_THROWS_AS(tent_norm(phi, too_big), Error);
}

TEST_CASE("tent norm of a decaying eigenmode tends to 1/2") {
    SpatialGrid g(1, 24.0, 0.05, BoundaryMode::zero_padded);
    BallFamily fam{{{0.0, 0.0}}, {2.0, 4.0, 8.0, 12.0}};
    auto u = SpaceTimeField::from_function(g, tent_ladder(g, fam), [](double t, const Point& x) { return std::exp(-t) * std::sin(x[0]); });
    auto tn = tent_norm(u, fam);
    for (const auto& b : tn.per_ball) {
        const double r = b.radius;
        // (1/|B|) int_0^{r^2} e^{-2t} dt int_B sin^2 = (1/4)(1 - e^{-2r^2})(1 - sin(2r)/(2r))
        const double exact = std::sqrt(0.25 * (1 - std::exp(-2 * r * r)) * (1 - std::sin(2 * r) / (2 * r)));
        CHECK(b.value == doctest::Approx(exact).epsilon(1e-2));
        CHECK(std::abs(b.value - 0.5) <= 1.0 / (8.0 * r) + 1e-2);
    }
}

TEST_CASE("bmo^-1 of data") {
    SpatialGrid g(1, 24.0, 0.02, BoundaryMode::zero_padded);
    BallFamily fam{{{0.0, 0.0}}, {0.5, 1.0}};
    CHECK(bmo_inv_norm(g, Samples(g.size(), 0.0), fam).value == 0.0);
    const double oracle = heat_kernel_tent_oracle();
    CHECK(bmo_inv_norm(g, InitialDatum::dirac(1), fam).value == doctest::Approx(oracle).epsilon(0.05));

    SpatialGrid gp(1, 8 * std::numbers::pi, std::numbers::pi / 64, BoundaryMode::periodic);
    HeatOperatorConfig spectral{HeatMethod::spectral_multiplier, 10.0, true};
    BallFamily fo = BallFamily::lattice(1, 2.0, 0.5, {1.0, 2.0, 4.0});
    const double a = bmo_inv_norm(gp, InitialDatum::oscillator(1, 1.0, 1.0), fo, spectral).value;
    const double b = bmo_inv_norm(gp, InitialDatum::oscillator(1, 2.0, 2.0), fo, spectral).value;
    CHECK(b / a == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("Schwartz seminorms") {
    SchwartzProbe gauss(1, {{1.0}}, 1.0 / std::sqrt(2.0));  // e^{-x^2}
    CHECK(schwartz_seminorm(gauss, SeminormOrder(0)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(schwartz_seminorm(gauss, SeminormOrder(1)) == doctest::Approx(1.0).epsilon(1e-10));
    // M = 2: candidates include sup|phi''| = 2 at x = 0
    CHECK(schwartz_seminorm(gauss, SeminormOrder(2)) == doctest::Approx(2.0).epsilon(1e-8));
    SchwartzProbe dilated(1, {{1.0}}, std::sqrt(2.0));  // e^{-(x/2)^2}
    CHECK(schwartz_seminorm(dilated, SeminormOrder(0)) == doctest::Approx(1.0).epsilon(1e-10));
    double prev = 0;
    auto p = SchwartzProbe::hermite(2, 2, 1.0);
    for (int M = 0; M <= 5; ++M) {
        const double v = schwartz_seminorm(p, SeminormOrder(M));
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(schwartz_seminorm(p.scaled(3.0), SeminormOrder(3)) == doctest::Approx(3.0 * schwartz_seminorm(p, SeminormOrder(3))).epsilon(1e-10));
    CHECK_THROWS_AS(SeminormOrder(13), Error);
}

TEST_CASE("bump seminorms match a brute-force oracle") {
    TestFunction h(1, {0.5, 0.0}, 1.0);
    CHECK(schwartz_seminorm(h, SeminormOrder(0)) == doctest::Approx(1.0).epsilon(1e-10));
    // P_2 by dense sampling of every candidate
    double brute = 0;
    for (int i = 0; i <= 400000; ++i) {
        const double x = -0.5 + i * 2.0 / 400000;
        for (int b = 0; b <= 2; ++b) {
            for (int a = 0; a + b <= 2; ++a) brute = std::max(brute, std::abs(std::pow(x, a) * h.derivative({b, 0}, {x, 0})));
        }
    }
    CHECK(schwartz_seminorm(h, SeminormOrder(2)) == doctest::Approx(brute).epsilon(1e-6));
    TestFunction h2(2, {0.0, 0.0}, 1.0);
    const double p2 = schwartz_seminorm(h2, SeminormOrder(2));
    CHECK(p2 >= schwartz_seminorm(TestFunction(1, {0.0, 0.0}, 1.0), SeminormOrder(2)) - 1e-6);
}

TEST_CASE("tent to strip bound") {
    SpatialGrid g(1, 8.0, 0.02, BoundaryMode::zero_padded);
    BallFamily fam = BallFamily::lattice(1, 1.0, 0.5, {0.5, 1.0});
    auto times = tent_ladder(g, fam);
    auto one = SpaceTimeField::from_function(g, times, [](double, const Point&) { return 1.0; });
    auto rep = tent_to_strip_bound(one, StripSpec(0.01, 1.0), {{0.0, 0.0}, {1.0, 0.0}}, fam);
    CHECK(rep.sup_F == doctest::Approx(std::sqrt(0.99 * 2.0)).epsilon(1e-6));
    CHECK(rep.ratio == doctest::Approx(std::sqrt(0.99 * 2.0)).epsilon(1e-6));
    auto zero = one.scaled(0.0);
    CHECK(tent_to_strip_bound(zero, StripSpec(0.01, 1.0), {{0.0, 0.0}}, fam).sup_F == 0.0);
}

TEST_CASE("Caccioppoli ratio") {
    SpatialGrid g(1, 6.0, 0.01, BoundaryMode::zero_padded);
    const auto times = linspace(0.5, 2.0, 151);
    auto u = sample_field(AnalyticSolution::eigenmode(1, {1.0, 0.0}), g, times);
    CylinderRegion inner{1.0, 2.0, {0.0, 0.0}, 0.0, 1.0};
    CylinderRegion outer{0.5, 2.0, {0.0, 0.0}, 0.0, 2.0};
    const double num = 0.5 * (std::exp(-2.0) - std::exp(-4.0)) * (1 + std::sin(2.0) / 2);
    const double den = 0.5 * (std::exp(-1.0) - std::exp(-4.0)) * (2 - std::sin(4.0) / 2) * 3.0;
    const double r = caccioppoli_ratio(u, inner, outer);
    CHECK(r == doctest::Approx(num / den).epsilon(1e-3));
    CHECK(r <= 1.0);
    auto c = SpaceTimeField::from_function(g, times, [](double, const Point&) { return 4.0; });
    CHECK(caccioppoli_ratio(c, inner, outer) == 0.0);
    CHECK_THROWS_AS(caccioppoli_ratio(u, outer, inner), Error);
}

TEST_CASE("norm report CSV") {
    std::ostringstream os;
    write_norm_report(os, {{"tent_norm", 0.5, "centers=1;radii=1", 1, 0.25}});
    CHECK(os.str() == "quantity,value,family_spec,refinement_level,stability_pct\ntent_norm,0.5,centers=1;radii=1,1,0.25\n");
}
