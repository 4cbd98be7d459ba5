#include "caloric/probes.hpp"

#include <cmath>
#include <cstdio>

#include "caloric/error.hpp"
#include "caloric/ids.hpp"

namespace caloric {
namespace {
std::string fmt(double v) { return format_number(v); }
}  // namespace

// ---------------------------------------------------------------- TestFunction

TestFunction::TestFunction(int dim, Point center, double radius, double amplitude)
    : dim_(dim), center_(center), radius_(radius), amplitude_(amplitude) {
    require(dim == 1 || dim == 2, ErrorKind::Argument, "test function dimension must be 1 or 2");
    require(radius > 0.0, ErrorKind::Argument, "test function support radius must be positive");
    if (dim == 1) center_[1] = 0.0;
}

std::string TestFunction::id() const {
    std::string c = fmt(center_[0]);
    if (dim_ == 2) c += ";" + fmt(center_[1]);
    return "bump:c=" + c + ",r=" + fmt(radius_);
}

double TestFunction::value(const Point& x) const {
    const double y0 = x[0] - center_[0];
    const double y1 = dim_ == 2 ? x[1] - center_[1] : 0.0;
    const double s = 1.0 - (y0 * y0 + y1 * y1) / (radius_ * radius_);
    if (s <= 0.0) return 0.0;
    return amplitude_ * std::exp(-1.0 / s);
}

Point TestFunction::gradient(const Point& x) const {
    const double y0 = x[0] - center_[0];
    const double y1 = dim_ == 2 ? x[1] - center_[1] : 0.0;
    const double r2 = radius_ * radius_;
    const double s = 1.0 - (y0 * y0 + y1 * y1) / r2;
    if (s <= 0.0) return {0.0, 0.0};
    // grad h = h s^{-2} grad s, grad s = -2y/rho^2
    const double f = amplitude_ * std::exp(-1.0 / s - 2.0 * std::log(s)) * (-2.0 / r2);
    return {f * y0, dim_ == 2 ? f * y1 : 0.0};
}

double TestFunction::laplacian(const Point& x) const {
    const double y0 = x[0] - center_[0];
    const double y1 = dim_ == 2 ? x[1] - center_[1] : 0.0;
    const double r2 = radius_ * radius_;
    const double y2 = y0 * y0 + y1 * y1;
    const double s = 1.0 - y2 / r2;
    if (s <= 0.0) return 0.0;
    const double grad_s2 = 4.0 * y2 / (r2 * r2);
    const double lap_s = -2.0 * dim_ / r2;
    // div(h s^-2 grad s) = h (s^-4 |grad s|^2 - 2 s^-3 |grad s|^2 + s^-2 lap s)
    const double h = amplitude_ * std::exp(-1.0 / s);
    return h * (grad_s2 / (s * s * s * s) - 2.0 * grad_s2 / (s * s * s) + lap_s / (s * s));
}

TestFunction::DerivativeForm TestFunction::derivative_form(const MultiIndex& beta) const {
    require(beta[0] >= 0 && beta[1] >= 0, ErrorKind::Argument, "negative multi-index");
    require(dim_ == 2 || beta[1] == 0, ErrorKind::Argument, "second-axis derivative of a 1D test function");
    const double r2 = radius_ * radius_;
    Poly2 s(1.0);
    s.add_term(2, 0, -1.0 / r2);
    if (dim_ == 2) s.add_term(0, 2, -1.0 / r2);
    const Poly2 s2 = s * s;
    DerivativeForm form{Poly2(1.0), 0};
    for (int axis = 0; axis < 2; ++axis) {
        Poly2 ds;
        if (axis == 0) ds.add_term(1, 0, -2.0 / r2);
        else ds.add_term(0, 1, -2.0 / r2);
        for (int k = 0; k < beta[axis]; ++k) {
            const Poly2& p = form.numerator;
            form.numerator = p.derivative(axis) * s2 + (-static_cast<double>(form.s_power)) * (p * ds * s) + p * ds;
            form.s_power += 2;
        }
    }
    return form;
}

double TestFunction::evaluate(const DerivativeForm& form, const Point& x) const {
    const Point y{x[0] - center_[0], dim_ == 2 ? x[1] - center_[1] : 0.0};
    const double s = 1.0 - (y[0] * y[0] + y[1] * y[1]) / (radius_ * radius_);
    if (s <= 0.0) return 0.0;
    return amplitude_ * form.numerator(y) * std::exp(-1.0 / s - form.s_power * std::log(s));
}

double TestFunction::derivative(const MultiIndex& beta, const Point& x) const {
    return evaluate(derivative_form(beta), x);
}

Samples TestFunction::sample(const SpatialGrid& grid) const {
    return caloric::sample(grid, [this](const Point& x) { return value(x); });
}

VectorSamples TestFunction::sample_gradient(const SpatialGrid& grid) const {
    VectorSamples out(static_cast<std::size_t>(grid.dim()), Samples(grid.size()));
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Point g = gradient(grid.point(k));
        for (int a = 0; a < grid.dim(); ++a) out[a][k] = g[a];
    }
    return out;
}

TestFunction TestFunction::parse(const std::string& id, int dim) {
    const auto p = ParsedId::parse(id);
    require(p.name == "bump", ErrorKind::Argument, "expected 'bump:...' but got '" + id + "'");
    p.only({"c", "r", "A"});
    auto c = p.list("c");
    c.resize(2, 0.0);
    return TestFunction(dim, {c[0], c[1]}, p.number("r", 1.0), p.number("A", 2.718281828459045));
}

// --------------------------------------------------------------- SchwartzProbe

SchwartzProbe::SchwartzProbe(int dim, std::vector<std::vector<double>> axis_coefficients, double sigma,
                             std::string id)
    : dim_(dim), coeffs_(std::move(axis_coefficients)), sigma_(sigma), id_(std::move(id)) {
    require(dim == 1 || dim == 2, ErrorKind::Argument, "probe dimension must be 1 or 2");
    require(sigma > 0.0, ErrorKind::Argument, "probe width must be positive");
    coeffs_.resize(static_cast<std::size_t>(dim), std::vector<double>{1.0});
    for (auto& c : coeffs_) {
        if (c.empty()) c = {0.0};
    }
    if (id_.empty()) {
        std::string cs;
        for (std::size_t m = 0; m < coeffs_[0].size(); ++m) cs += (m ? ";" : "") + fmt(coeffs_[0][m]);
        id_ = "probe:coeffs=" + cs + ",sigma=" + fmt(sigma_);
    }
}

SchwartzProbe SchwartzProbe::hermite(int dim, int k, double sigma) {
    require(k >= 0 && k <= 3, ErrorKind::Argument, "hermite probes are available for degree 0..3");
    std::vector<double> c;
    const double a = 1.0 / sigma;
    switch (k) {
        case 0: c = {1.0}; break;
        case 1: c = {0.0, a}; break;
        case 2: c = {-1.0, 0.0, a * a}; break;
        default: c = {0.0, -3.0 * a, 0.0, a * a * a}; break;
    }
    return SchwartzProbe(dim, {c}, sigma, "probe:he=" + std::to_string(k) + ",sigma=" + fmt(sigma));
}

SchwartzProbe SchwartzProbe::parse(const std::string& id, int dim) {
    const auto p = ParsedId::parse(id);
    require(p.name == "probe", ErrorKind::Argument, "expected 'probe:...' but got '" + id + "'");
    p.only({"he", "coeffs", "sigma"});
    const double sigma = p.number("sigma", 1.0);
    if (p.has("he")) return hermite(dim, p.integer("he", 0), sigma);
    require(p.has("coeffs"), ErrorKind::Argument, "probe id needs he=<k> or coeffs=<list>: '" + id + "'");
    return SchwartzProbe(dim, {p.list("coeffs")}, sigma, id);
}

double SchwartzProbe::value(const Point& x) const {
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) v *= poly::eval(coeffs_[a], x[a]) * std::exp(-x[a] * x[a] / (2.0 * sigma_ * sigma_));
    return v;
}

std::vector<double> SchwartzProbe::axis_derivative_poly(int axis, int beta) const {
    std::vector<double> q = coeffs_.at(static_cast<std::size_t>(axis));
    const double inv = -1.0 / (sigma_ * sigma_);
    for (int k = 0; k < beta; ++k) {
        // (q e^{-x^2/2s^2})' = (q' - x q / s^2) e^{-x^2/2s^2}
        q = poly::add(poly::derivative(q), poly::times_x(q, inv));
    }
    return q;
}

double SchwartzProbe::derivative(const MultiIndex& beta, const Point& x) const {
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) {
        v *= poly::eval(axis_derivative_poly(a, beta[a]), x[a]) * std::exp(-x[a] * x[a] / (2.0 * sigma_ * sigma_));
    }
    return v;
}

double SchwartzProbe::evolved(double t, const Point& x) const {
    require(t >= 0.0, ErrorKind::Argument, "probe evolution needs t >= 0");
    if (t == 0.0) return value(x);
    const double s2 = sigma_ * sigma_;
    const double w = s2 + 2.0 * t;
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) {
        // Gaussian product: integrate Phi(t, x-y) p(y) e^{-y^2/2s^2} dy
        const double mean = x[a] * s2 / w;
        const double var = 2.0 * t * s2 / w;
        v *= std::sqrt(s2 / w) * std::exp(-x[a] * x[a] / (2.0 * w)) * poly::expectation<double>(coeffs_[a], mean, var);
    }
    return v;
}

SchwartzProbe SchwartzProbe::evolved_probe(double t) const {
    require(t >= 0.0, ErrorKind::Argument, "probe evolution needs t >= 0");
    const double s2 = sigma_ * sigma_;
    const double w = s2 + 2.0 * t;
    const double a = s2 / w;
    const double v = 2.0 * t * s2 / w;
    const double pre = std::sqrt(s2 / w);
    std::vector<std::vector<double>> out;
    for (const auto& c : coeffs_) {
        // E[(a x + Z)^m] = sum_j C(m,j) a^(m-j) x^(m-j) E[Z^j],  Z ~ N(0, v)
        std::vector<double> q(c.size(), 0.0);
        for (std::size_t m = 0; m < c.size(); ++m) {
            double binom = 1.0;
            for (std::size_t j = 0; j <= m; ++j) {
                if (j > 0) binom = binom * static_cast<double>(m - j + 1) / static_cast<double>(j);
                if (j % 2) continue;
                const double zj = poly::gaussian_moment<double>(static_cast<int>(j), 0.0, v);
                q[m - j] += pre * c[m] * binom * std::pow(a, static_cast<double>(m - j)) * zj;
            }
        }
        out.push_back(std::move(q));
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "@t=%g", t);
    return SchwartzProbe(dim_, std::move(out), std::sqrt(w), id_ + buf);
}

Samples SchwartzProbe::sample(const SpatialGrid& grid) const {
    return caloric::sample(grid, [this](const Point& x) { return value(x); });
}

SchwartzProbe SchwartzProbe::scaled(double c) const {
    auto coeffs = coeffs_;
    for (double& v : coeffs[0]) v *= c;
    return SchwartzProbe(dim_, std::move(coeffs), sigma_, id_ + "*" + fmt(c));
}

std::vector<TestFunction> default_compact_panel(int dim) {
    std::vector<TestFunction> panel;
    for (double c : {0.0, 2.0, -2.0}) {
        for (double r : {1.0, 2.0}) panel.emplace_back(dim, Point{c, 0.0}, r);
    }
    return panel;
}

std::vector<SchwartzProbe> default_schwartz_panel(int dim) {
    std::vector<SchwartzProbe> panel;
    for (double sigma : {1.0, 2.0}) {
        for (int k = 0; k <= 3; ++k) panel.push_back(SchwartzProbe::hermite(dim, k, sigma));
    }
    return panel;
}

}  // namespace caloric
