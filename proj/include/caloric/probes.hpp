#pragma once

#include <array>
#include <string>
#include <vector>

#include "caloric/grid_field.hpp"
#include "caloric/polynomial.hpp"

namespace caloric {

using MultiIndex = std::array<int, 2>;

/// Smooth compactly supported bump h(x) = A exp(-1/(1 - |x-c|^2/rho^2)).
///
/// The default amplitude e makes h(c) = 1. All derivatives are exact: each
/// one has the form P(y) s^{-m} exp(-1/s) with y = x - c and s = 1 - |y|^2/rho^2.
class TestFunction {
public:
    TestFunction(int dim, Point center, double radius, double amplitude = 2.718281828459045);

    int dim() const noexcept { return dim_; }
    const Point& center() const noexcept { return center_; }
    double radius() const noexcept { return radius_; }
    double amplitude() const noexcept { return amplitude_; }
    std::string id() const;

    double value(const Point& x) const;
    Point gradient(const Point& x) const;
    double laplacian(const Point& x) const;

    struct DerivativeForm {
        Poly2 numerator;
        int s_power = 0;
    };
    DerivativeForm derivative_form(const MultiIndex& beta) const;
    double derivative(const MultiIndex& beta, const Point& x) const;
    double evaluate(const DerivativeForm& form, const Point& x) const;

    Samples sample(const SpatialGrid& grid) const;
    VectorSamples sample_gradient(const SpatialGrid& grid) const;

    /// Parses "bump:c=<x>[;<y>],r=<rho>[,A=<amp>]".
    static TestFunction parse(const std::string& id, int dim);

private:
    int dim_;
    Point center_;
    double radius_;
    double amplitude_;
};

/// Gaussian-polynomial probe phi(x) = prod_i p_i(x_i) * exp(-|x|^2 / (2 sigma^2)).
class SchwartzProbe {
public:
    SchwartzProbe(int dim, std::vector<std::vector<double>> axis_coefficients, double sigma, std::string id = {});

    /// Probe p(x) = He_k(x_1/sigma) exp(-|x|^2/(2 sigma^2)) with the probabilists' Hermite He_k.
    static SchwartzProbe hermite(int dim, int k, double sigma);
    /// Parses "probe:he=<k>,sigma=<s>" or "probe:coeffs=<c0>;<c1>;...,sigma=<s>".
    static SchwartzProbe parse(const std::string& id, int dim);

    int dim() const noexcept { return dim_; }
    double sigma() const noexcept { return sigma_; }
    const std::string& id() const noexcept { return id_; }
    const std::vector<std::vector<double>>& axis_coefficients() const noexcept { return coeffs_; }

    double value(const Point& x) const;
    double derivative(const MultiIndex& beta, const Point& x) const;
    /// Closed-form (e^{t Laplacian} phi)(x); t = 0 returns phi(x).
    double evolved(double t, const Point& x) const;

    /// e^{t Laplacian} phi written again as a Gaussian-polynomial probe of width sqrt(sigma^2 + 2t).
    SchwartzProbe evolved_probe(double t) const;

    /// q with d^beta [p_axis(x) e^{-x^2/2sigma^2}] = q(x) e^{-x^2/2sigma^2}.
    std::vector<double> axis_derivative_poly(int axis, int beta) const;

    Samples sample(const SpatialGrid& grid) const;
    SchwartzProbe scaled(double c) const;

private:
    int dim_;
    std::vector<std::vector<double>> coeffs_;
    double sigma_;
    std::string id_;
};

/// Six bumps: centers 0, +2, -2 on the first axis, radii 1 and 2.
std::vector<TestFunction> default_compact_panel(int dim);
/// Eight probes: He_0..He_3 at widths sigma = 1 and 2.
std::vector<SchwartzProbe> default_schwartz_panel(int dim);

}  // namespace caloric
