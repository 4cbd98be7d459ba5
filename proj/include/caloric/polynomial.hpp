#pragma once

#include <complex>
#include <vector>

#include "caloric/grid_field.hpp"

namespace caloric {

/// Univariate polynomial helpers on ascending coefficient vectors.
namespace poly {

double eval(const std::vector<double>& c, double x);
std::vector<double> derivative(const std::vector<double>& c);
std::vector<double> times_x(const std::vector<double>& c, double scale = 1.0);
std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b);

/// E[Y^m] for Y ~ N(mean, variance); the mean may be complex.
template <typename T>
T gaussian_moment(int m, T mean, double variance) {
    // sum over even j of C(m,j) mean^(m-j) variance^(j/2) (j-1)!!
    T total = T(0);
    double binom = 1.0;
    double dfact = 1.0;
    for (int j = 0; j <= m; ++j) {
        if (j > 0) binom = binom * (m - j + 1) / j;
        if (j % 2 == 0) {
            if (j >= 2) dfact *= (j - 1);
            T term = T(binom * dfact * std::pow(variance, j / 2));
            for (int k = 0; k < m - j; ++k) term *= mean;
            total += term;
        }
    }
    return total;
}

/// sum_m c_m E[Y^m].
template <typename T>
T expectation(const std::vector<double>& c, T mean, double variance) {
    T total = T(0);
    for (std::size_t m = 0; m < c.size(); ++m) {
        if (c[m] != 0.0) total += c[m] * gaussian_moment<T>(static_cast<int>(m), mean, variance);
    }
    return total;
}

}  // namespace poly

/// Dense polynomial in (y1, y2); one-dimensional use ignores y2.
class Poly2 {
public:
    Poly2() = default;
    explicit Poly2(double constant);

    double coeff(int e1, int e2) const;
    void add_term(int e1, int e2, double c);
    int degree() const noexcept { return degree_; }

    double operator()(const Point& y) const;
    Poly2 derivative(int axis) const;

    friend Poly2 operator+(const Poly2& a, const Poly2& b);
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    friend Poly2 operator*(double s, const Poly2& a);

private:
    void grow(int degree);
    int degree_ = 0;
    std::vector<double> c_{0.0};  // (degree_+1)^2, index e1*(degree_+1)+e2
};

}  // namespace caloric
