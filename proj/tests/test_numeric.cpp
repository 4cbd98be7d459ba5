#include <doctest.h>

#include <cmath>
#include <vector>

#include "caloric/error.hpp"
#include "caloric/numeric.hpp"

using namespace caloric;

TEST_CASE("compensated sum recovers cancelled small terms") {
    std::vector<double> v{1e16, 1.0, -1e16, 1.0};
    CHECK(compensated_sum(v) == doctest::Approx(2.0));
}

TEST_CASE("fit_line is exact on a line and flags flat data") {
    std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
    auto f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.r2 == doctest::Approx(1.0));
    std::vector<double> flat{4, 4, 4, 4};
    auto g = fit_line(x, flat);
    CHECK(g.slope == doctest::Approx(0.0));
    CHECK(g.r2 == 1.0);
}

TEST_CASE("neville extrapolation reproduces polynomials") {
    std::vector<double> x{0.1, 0.2, 0.4};
    std::vector<double> y;
    for (double t : x) y.push_back(3.0 - 2.0 * t + 5.0 * t * t);
    CHECK(extrapolate_to_zero(x, y) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("trapezoid_on interpolates at endpoints and rejects uncovered intervals") {
    std::vector<double> t{0.0, 1.0, 2.0}, g{0.0, 1.0, 2.0};
    CHECK(trapezoid_on(t, g, 0.5, 1.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(trapezoid_on(t, g, 0.5, 3.0), Error);
}

TEST_CASE("parallel_for visits each index once and propagates exceptions") {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS(parallel_for(10, [](std::size_t i) {
        if (i == 7) throw Error(ErrorKind::Data, "boom");
    }));
}
