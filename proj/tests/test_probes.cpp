#include <doctest.h>

#include <cmath>
#include <numbers>

#include "caloric/error.hpp"
#include "caloric/probes.hpp"

using namespace caloric;

namespace {
// Five-point central difference used as an independent derivative oracle.
template <typename F>
double fd(F f, double x, double h = 1e-3) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}
}  // namespace

TEST_CASE("bump is normalized at its center and vanishes outside") {
    TestFunction h(1, {0.5, 0.0}, 2.0);
    CHECK(h.value({0.5, 0.0}) == doctest::Approx(1.0));
    CHECK(h.value({2.6, 0.0}) == 0.0);
    CHECK(h.id() == "bump:c=0.5,r=2");
}

TEST_CASE("bump derivatives agree with finite differences") {
    TestFunction h(1, {0.0, 0.0}, 1.5);
    for (double x : {-0.9, -0.2, 0.3, 1.1}) {
        auto d1 = [&](double y) { return h.derivative({1, 0}, {y, 0.0}); };
        auto d0 = [&](double y) { return h.value({y, 0.0}); };
        CHECK(h.derivative({1, 0}, {x, 0.0}) == doctest::Approx(fd(d0, x)).epsilon(1e-6));
        CHECK(h.derivative({2, 0}, {x, 0.0}) == doctest::Approx(fd(d1, x)).epsilon(1e-6));
        CHECK(h.laplacian({x, 0.0}) == doctest::Approx(h.derivative({2, 0}, {x, 0.0})).epsilon(1e-12));
    }
    TestFunction h2(2, {0.1, -0.2}, 1.0);
    Point p{0.3, 0.1};
    const double lap = h2.derivative({2, 0}, p) + h2.derivative({0, 2}, p);
    CHECK(h2.laplacian(p) == doctest::Approx(lap).epsilon(1e-12));
    auto g = h2.gradient(p);
    CHECK(g[1] == doctest::Approx(h2.derivative({0, 1}, p)).epsilon(1e-12));
    auto dy = [&](double y) { return h2.derivative({1, 0}, {p[0], y}); };
    CHECK(h2.derivative({1, 1}, p) == doctest::Approx(fd(dy, p[1])).epsilon(1e-6));
}

TEST_CASE("bump parse round trip") {
    auto h = TestFunction::parse("bump:c=2;1,r=0.5", 2);
    CHECK(h.center()[1] == 1.0);
    CHECK(h.radius() == 0.5);
    CHECK_THROWS_AS(TestFunction::parse("blob:c=1", 1), Error);
}

TEST_CASE("probe evolution matches quadrature of the heat kernel") {
    for (int k = 0; k <= 3; ++k) {
        auto p = SchwartzProbe::hermite(1, k, 1.5);
        const double t = 0.4, x = 0.7;
        // Oracle: midpoint rule on a wide interval.
        double acc = 0;
        const double dy = 1e-3;
        for (double y = -20; y < 20; y += dy) {
            const double ym = y + dy / 2;
            acc += std::exp(-(x - ym) * (x - ym) / (4 * t)) / std::sqrt(4 * std::numbers::pi * t) * p.value({ym, 0}) * dy;
        }
        CHECK(p.evolved(t, {x, 0}) == doctest::Approx(acc).epsilon(1e-9));
    }
}

TEST_CASE("probe derivatives agree with finite differences") {
    auto p = SchwartzProbe::hermite(1, 3, 2.0);
    for (double x : {-1.0, 0.4, 2.5}) {
        auto d1 = [&](double y) { return p.derivative({1, 0}, {y, 0}); };
        CHECK(p.derivative({2, 0}, {x, 0}) == doctest::Approx(fd(d1, x)).epsilon(1e-6));
    }
    auto q = SchwartzProbe::hermite(2, 1, 1.0);
    CHECK(q.value({1.0, 1.0}) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("default panels") {
    CHECK(default_compact_panel(1).size() == 6);
    auto s = default_schwartz_panel(1);
    CHECK(s.size() == 8);
    CHECK(s[2].id() == "probe:he=2,sigma=1");
    CHECK(SchwartzProbe::parse("probe:he=2,sigma=1", 1).value({0.0, 0.0}) == doctest::Approx(-1.0));
}

TEST_CASE("evolved probe agrees with the pointwise closed form") {
    auto p = SchwartzProbe::hermite(2, 3, 1.5);
    auto q = p.evolved_probe(0.35);
    for (Point x : {Point{0.3, -0.2}, Point{2.0, 1.0}, Point{-1.2, 0.0}}) {
        CHECK(q.value(x) == doctest::Approx(p.evolved(0.35, x)).epsilon(1e-12));
    }
}
