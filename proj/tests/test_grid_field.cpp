#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "caloric/error.hpp"
#include "caloric/grid_field.hpp"

using namespace caloric;

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(SpatialGrid(3, 4.0, 0.1, BoundaryMode::periodic), Error);
    CHECK_THROWS_AS(SpatialGrid(1, 4.0, 2.0, BoundaryMode::periodic), Error);
    SpatialGrid g(1, 4.0, 0.1, BoundaryMode::periodic);
    CHECK(g.points_per_axis() == 80);
    CHECK(g.coordinate(0) == -4.0);
    CHECK(g.refined().spacing() == doctest::Approx(0.05));
}

TEST_CASE("ball integral of a constant matches the ball measure") {
    SpatialGrid g1(1, 4.0, 0.01, BoundaryMode::zero_padded);
    Samples one(g1.size(), 1.0);
    CHECK(integrate_ball(g1, one, {0.3, 0.0}, 1.234) == doctest::Approx(2.468).epsilon(1e-12));
    SpatialGrid g2(2, 4.0, 0.02, BoundaryMode::zero_padded);
    Samples one2(g2.size(), 1.0);
    CHECK(integrate_ball(g2, one2, {0.0, 0.0}, 1.0) == doctest::Approx(std::numbers::pi).epsilon(2e-3));
    CHECK_THROWS_AS(integrate_ball(g1, one, {0.0, 0.0}, 5.0), Error);
}

TEST_CASE("periodic ball wraps around") {
    SpatialGrid g(1, 2.0, 0.01, BoundaryMode::periodic);
    Samples one(g.size(), 1.0);
    CHECK(integrate_ball(g, one, {1.8, 0.0}, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("strip L2 of a constant") {
    SpatialGrid g(1, 4.0, 0.05, BoundaryMode::zero_padded);
    std::vector<double> times{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35};
    auto u = SpaceTimeField::from_function(g, times, [](double, const Point&) { return 2.0; });
    // int_0.1^0.3 int_{-1}^{1} 4 = 1.6
    CHECK(integrate_strip_L2(u, StripSpec(0.1, 0.3), 1.0) == doctest::Approx(std::sqrt(1.6)).epsilon(1e-12));
    CHECK_THROWS_AS(StripSpec(0.3, 0.1), Error);
}

TEST_CASE("strip L2 needs four samples") {
    SpatialGrid g(1, 4.0, 0.05, BoundaryMode::zero_padded);
    auto u = SpaceTimeField::from_function(g, {0.1, 0.2, 0.3}, [](double, const Point&) { return 1.0; });
    CHECK_THROWS_AS(integrate_strip_L2(u, StripSpec(0.1, 0.3), 1.0), Error);
}

TEST_CASE("gradient is second-order accurate") {
    for (auto mode : {BoundaryMode::periodic, BoundaryMode::zero_padded}) {
        SpatialGrid g(1, std::numbers::pi, 2 * std::numbers::pi / 200, mode);
        auto s = sample(g, [](const Point& x) { return std::sin(x[0]); });
        auto d = gradient(g, s);
        double err = 0;
        for (std::size_t k = 0; k < g.size(); ++k) err = std::max(err, std::abs(d[0][k] - std::cos(g.coordinate(k))));
        CHECK(err < 2e-3);
    }
    SpatialGrid g2(2, 3.0, 0.05, BoundaryMode::zero_padded);
    auto s = sample(g2, [](const Point& x) { return x[0] * x[0] + 3.0 * x[1]; });
    auto d = gradient(g2, s);
    auto p = g2.point(1234);
    CHECK(d[0][1234] == doctest::Approx(2 * p[0]));
    CHECK(d[1][1234] == doctest::Approx(3.0));
}

TEST_CASE("field CSV round trip is lossless") {
    SpatialGrid g(2, 1.0, 0.2, BoundaryMode::periodic);
    auto u = SpaceTimeField::from_function(g, {0.1, 0.2}, [](double t, const Point& x) { return t / 3 + x[0] * x[1]; });
    std::stringstream ss;
    write_field_csv(ss, u);
    auto v = read_field_csv(ss);
    CHECK(v.grid() == g);
    for (std::size_t i = 0; i < 2; ++i) {
        auto a = u.slice(i), b = v.slice(i);
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
    }
}

TEST_CASE("non-finite samples are rejected") {
    SpatialGrid g(1, 1.0, 0.2, BoundaryMode::periodic);
    std::vector<double> vals(g.size(), 0.0);
    vals[2] = std::nan("");
    CHECK_THROWS_AS(SpaceTimeField(g, {0.1}, vals), Error);
}

TEST_CASE("extent audit") {
    auto a = extent_audit([](double L) { return 1.0 - std::exp(-L); }, 20.0);
    CHECK(a.passed);
    auto b = extent_audit([](double L) { return L; }, 2.0);
    CHECK_FALSE(b.passed);
}

TEST_CASE("odd integrands vanish on symmetric balls") {
    SpatialGrid g(1, 4.0, 0.01, BoundaryMode::zero_padded);
    auto s = sample(g, [](const Point& x) { return x[0]; });
    for (double R : {0.5, 1.2345, 3.0}) CHECK(std::abs(integrate_ball(g, s, {0.0, 0.0}, R)) < 1e-14);
    CHECK(integrate_ball(g, Samples(g.size(), 1.0), {0.0, 0.0}, 2.0) == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("strip L2 examples") {
    SpatialGrid g(1, 4.0, 0.05, BoundaryMode::zero_padded);
    std::vector<double> times;
    for (int i = 0; i <= 20; ++i) times.push_back(1.0 + i * 0.05);
    auto one = SpaceTimeField::from_function(g, times, [](double, const Point&) { return 1.0; });
    CHECK(integrate_strip_L2(one, StripSpec(1.0, 2.0), 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    // Phi(t,x) over R = 8: oracle int_1^2 (8 pi t)^{-1/2} erf(8/sqrt(2t)) dt by Simpson
    SpatialGrid big(1, 12.0, 0.02, BoundaryMode::zero_padded);
    std::vector<double> ts;
    for (int i = 0; i <= 400; ++i) ts.push_back(1.0 + i / 400.0);
    auto phi = SpaceTimeField::from_function(big, ts, [](double t, const Point& x) {
        return std::exp(-x[0] * x[0] / (4 * t)) / std::sqrt(4 * std::numbers::pi * t);
    });
    auto integrand = [](double t) { return std::erf(8 / std::sqrt(2 * t)) / std::sqrt(8 * std::numbers::pi * t); };
    double simpson = 0;
    const int n = 2000;
    for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        simpson += w * integrand(1.0 + double(i) / n);
    }
    simpson /= 3.0 * n;
    CHECK(integrate_strip_L2(phi, StripSpec(1.0, 2.0), 8.0) == doctest::Approx(std::sqrt(simpson)).epsilon(1e-5));

    // e^{-t} sin x on a periodic grid: closed form (1/2)(e^{-2a}-e^{-2b}) (R - sin(2R)/2)
    SpatialGrid gp(1, std::numbers::pi * 2, std::numbers::pi / 200, BoundaryMode::periodic);
    auto u = SpaceTimeField::from_function(gp, ts, [](double t, const Point& x) { return std::exp(-t) * std::sin(x[0]); });
    const double R = 2.5;
    const double exact = 0.5 * (std::exp(-2.0) - std::exp(-4.0)) * (R - std::sin(2 * R) / 2);
    CHECK(integrate_strip_L2(u, StripSpec(1.0, 2.0), R) == doctest::Approx(std::sqrt(exact)).epsilon(1e-4));
}

TEST_CASE("gradient converges at second order") {
    auto err_at = [](double dx) {
        SpatialGrid g(1, 4.0, dx, BoundaryMode::zero_padded);
        auto s = sample(g, [](const Point& x) { return std::sin(x[0]); });
        auto d = gradient(g, s);
        double e = 0;
        for (std::size_t k = 1; k + 1 < g.size(); ++k) e = std::max(e, std::abs(d[0][k] - std::cos(g.coordinate(k))));
        return e;
    };
    const double ratio = err_at(0.1) / err_at(0.05);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
    SpatialGrid g(1, 4.0, 0.1, BoundaryMode::zero_padded);
    auto lin = gradient(g, sample(g, [](const Point& x) { return 3.0 * x[0]; }));
    for (double v : lin[0]) CHECK(v == doctest::Approx(3.0));
}

TEST_CASE("ball integrals are bit-reproducible") {
    SpatialGrid g(2, 3.0, 0.05, BoundaryMode::periodic);
    auto s = sample(g, [](const Point& x) { return std::cos(x[0]) * x[1] + 0.1; });
    const double a = integrate_ball(g, s, {0.3, -0.2}, 1.7);
    const double b = integrate_ball(g, s, {0.3, -0.2}, 1.7);
    CHECK(a == b);
}
