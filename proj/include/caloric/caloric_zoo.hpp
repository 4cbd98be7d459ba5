#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "caloric/grid_field.hpp"
#include "caloric/probes.hpp"

namespace caloric {

/// Partial sums of the flat series sum_k f^{(k)}(t) x^{2k}/(2k)! with f(t) = e^{-1/t}.
///
/// f^{(k)}(t) comes from the Cauchy integral on the circle |z - t| = 0.8t with
/// max(256, 16k) trapezoid nodes (relative error below 1e-11 for k < 40 and
/// t in [0.05, 1]). Coefficients are cached per t.
class TychonoffSeries {
public:
    explicit TychonoffSeries(int K = 40);

    int terms() const noexcept { return K_; }
    const std::vector<double>& coefficients(double t) const;

    struct Value {
        double value;
        bool truncated;  // last term above 1e-12 of the running sum
    };
    Value evaluate(double t, double x) const;
    Value derivative_x(double t, double x) const;

private:
    int K_;
    mutable std::mutex mutex_;
    mutable std::map<double, std::shared_ptr<const std::vector<double>>> cache_;
};

/// f^{(k)}(t) for f = e^{-1/t}, k = 0..K-1.
std::vector<double> flat_derivatives(double t, int K);

enum class SolutionKind { gaussian_kernel, caloric_polynomial, exponential, eigenmode, erf_front, tychonoff };

/// Closed-form caloric function in one or two space dimensions.
///
/// Kinds that depend on a single coordinate (caloric_polynomial, erf_front,
/// tychonoff) use the first axis.
class AnalyticSolution {
public:
    static AnalyticSolution gaussian_kernel(int dim, double t0, Point x0 = {0.0, 0.0});
    static AnalyticSolution caloric_polynomial(int dim, int m);
    static AnalyticSolution exponential(int dim, Point mu);
    static AnalyticSolution eigenmode(int dim, Point omega);
    static AnalyticSolution erf_front(int dim);
    static AnalyticSolution tychonoff(int dim, int K = 40);

    /// Ids: "gaussian_kernel:t0=1,x0=0", "caloric_polynomial:m=2", "exponential:mu=1",
    /// "eigenmode:omega=1", "erf_front", "tychonoff:K=40". Vector parameters use ';'.
    static AnalyticSolution parse(const std::string& id, int dim);

    SolutionKind kind() const noexcept { return kind_; }
    int dim() const noexcept { return dim_; }
    std::string id() const;

    double value(double t, const Point& x) const;
    Point gradient(double t, const Point& x) const;
    /// Validated evaluation domain: t > 0, and t <= 1 for tychonoff.
    void check_time(double t) const;

    /// <u(t), phi> in closed form when available; t = 0 gives the initial trace.
    std::optional<double> exact_pairing(double t, const SchwartzProbe& phi) const;

    const TychonoffSeries* series() const noexcept { return series_.get(); }

private:
    AnalyticSolution(SolutionKind kind, int dim);
    SolutionKind kind_;
    int dim_;
    double t0_ = 0.0;
    Point x0_{0.0, 0.0};
    int m_ = 0;
    Point vec_{0.0, 0.0};
    std::shared_ptr<TychonoffSeries> series_;
};

double eval_solution(const AnalyticSolution& sol, double t, const Point& x);

/// Value of the K-term series plus its truncation flag.
TychonoffSeries::Value tychonoff_eval(double t, double x, int K = 40);

struct ProbeRegion {
    double t_lo, t_hi;
    double x_lo, x_hi;  // box [x_lo, x_hi]^n
    int nt = 5;
    int nx = 9;
    double step = 1e-3;
    /// 2 or 4: order of the central difference stencils.
    int order = 2;
};

/// max |du/dt - Laplacian u| over the probe points by central differences.
double heat_residual(const AnalyticSolution& sol, const ProbeRegion& region);

/// Samples the solution on every time of the ladder.
SpaceTimeField sample_field(const AnalyticSolution& sol, const SpatialGrid& grid, const std::vector<double>& times);

enum class DatumKind { schwartz_gaussian_poly, sign_function, dirac, bmo_inv_oscillator };

/// Initial data with closed-form heat evolution and exact probe pairings.
class InitialDatum {
public:
    static InitialDatum schwartz(SchwartzProbe profile);
    static InitialDatum sign(int dim);
    static InitialDatum dirac(int dim, Point x0 = {0.0, 0.0});
    static InitialDatum oscillator(int dim, double omega, double amplitude = 1.0);

    /// Ids: "schwartz:he=2,sigma=1" (probe syntax), "sign", "dirac:x0=0", "oscillator:omega=1,A=1".
    static InitialDatum parse(const std::string& id, int dim);

    DatumKind kind() const noexcept { return kind_; }
    int dim() const noexcept { return dim_; }
    std::string id() const;
    double omega() const noexcept { return omega_; }
    double amplitude() const noexcept { return amplitude_; }

    /// (e^{t Laplacian} f)(x) in closed form, t > 0.
    double evolved(double t, const Point& x) const;
    /// Grid samples of f; the dirac becomes 1/cell volume at the nearest node.
    Samples sample(const SpatialGrid& grid) const;
    /// <f, phi> exactly.
    double pairing(const SchwartzProbe& phi) const;
    /// <e^{t Laplacian} f, phi> = <f, e^{t Laplacian} phi> exactly.
    double evolved_pairing(double t, const SchwartzProbe& phi) const;

    SpaceTimeField evolved_field(const SpatialGrid& grid, const std::vector<double>& times) const;

private:
    InitialDatum(DatumKind kind, int dim);
    DatumKind kind_;
    int dim_;
    Point x0_{0.0, 0.0};
    double omega_ = 1.0;
    double amplitude_ = 1.0;
    std::optional<SchwartzProbe> profile_;
};

}  // namespace caloric
