#include "caloric/polynomial.hpp"

#include <algorithm>

namespace caloric {
namespace poly {

double eval(const std::vector<double>& c, double x) {
    double r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

std::vector<double> derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t m = 1; m < c.size(); ++m) d[m - 1] = c[m] * static_cast<double>(m);
    return d;
}

std::vector<double> times_x(const std::vector<double>& c, double scale) {
    std::vector<double> r(c.size() + 1, 0.0);
    for (std::size_t m = 0; m < c.size(); ++m) r[m + 1] = scale * c[m];
    return r;
}

std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t m = 0; m < a.size(); ++m) r[m] += a[m];
    for (std::size_t m = 0; m < b.size(); ++m) r[m] += b[m];
    return r;
}

}  // namespace poly

Poly2::Poly2(double constant) : c_{constant} {}

void Poly2::grow(int degree) {
    if (degree <= degree_) return;
    std::vector<double> next(static_cast<std::size_t>((degree + 1) * (degree + 1)), 0.0);
    for (int i = 0; i <= degree_; ++i)
        for (int j = 0; j <= degree_; ++j) next[i * (degree + 1) + j] = c_[i * (degree_ + 1) + j];
    c_ = std::move(next);
    degree_ = degree;
}

double Poly2::coeff(int e1, int e2) const {
    if (e1 > degree_ || e2 > degree_) return 0.0;
    return c_[e1 * (degree_ + 1) + e2];
}

void Poly2::add_term(int e1, int e2, double c) {
    grow(std::max(e1, e2));
    c_[e1 * (degree_ + 1) + e2] += c;
}

double Poly2::operator()(const Point& y) const {
    double total = 0.0;
    for (int i = degree_; i >= 0; --i) {
        double row = 0.0;
        for (int j = degree_; j >= 0; --j) row = row * y[1] + c_[i * (degree_ + 1) + j];
        total = total * y[0] + row;
    }
    return total;
}

Poly2 Poly2::derivative(int axis) const {
    Poly2 d;
    for (int i = 0; i <= degree_; ++i)
        for (int j = 0; j <= degree_; ++j) {
            const double c = c_[i * (degree_ + 1) + j];
            if (c == 0.0) continue;
            if (axis == 0 && i > 0) d.add_term(i - 1, j, c * i);
            if (axis == 1 && j > 0) d.add_term(i, j - 1, c * j);
        }
    return d;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 r = a;
    for (int i = 0; i <= b.degree_; ++i)
        for (int j = 0; j <= b.degree_; ++j) {
            const double c = b.c_[i * (b.degree_ + 1) + j];
            if (c != 0.0) r.add_term(i, j, c);
        }
    return r;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 r;
    for (int i = 0; i <= a.degree_; ++i)
        for (int j = 0; j <= a.degree_; ++j) {
            const double ca = a.c_[i * (a.degree_ + 1) + j];
            if (ca == 0.0) continue;
            for (int k = 0; k <= b.degree_; ++k)
                for (int l = 0; l <= b.degree_; ++l) {
                    const double cb = b.c_[k * (b.degree_ + 1) + l];
                    if (cb != 0.0) r.add_term(i + k, j + l, ca * cb);
                }
        }
    return r;
}

Poly2 operator*(double s, const Poly2& a) {
    Poly2 r = a;
    for (double& c : r.c_) c *= s;
    return r;
}

}  // namespace caloric
