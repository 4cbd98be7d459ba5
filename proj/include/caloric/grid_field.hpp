#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace caloric {

using Point = std::array<double, 2>;

enum class BoundaryMode { periodic, zero_padded };

std::string to_string(BoundaryMode mode);
BoundaryMode parse_boundary_mode(const std::string& text);

/// Uniform tensor grid on [-L, L)^n with points x_j = -L + j*dx.
///
/// The spacing is snapped to 2L/N with N = round(2L/dx) so that the periodic
/// image of x_0 is exactly x_N = L.
class SpatialGrid {
public:
    SpatialGrid(int dim, double half_extent, double spacing, BoundaryMode mode);

    int dim() const noexcept { return dim_; }
    double half_extent() const noexcept { return half_extent_; }
    double spacing() const noexcept { return spacing_; }
    BoundaryMode mode() const noexcept { return mode_; }
    std::size_t points_per_axis() const noexcept { return n_; }
    std::size_t size() const noexcept { return dim_ == 1 ? n_ : n_ * n_; }
    double cell_volume() const noexcept { return dim_ == 1 ? spacing_ : spacing_ * spacing_; }

    double coordinate(std::size_t j) const noexcept { return -half_extent_ + static_cast<double>(j) * spacing_; }

    /// Point of flat index k (2D layout is x-major: k = i*N + j).
    Point point(std::size_t k) const noexcept;

    /// Grid with the same extent and mode, spacing divided by `factor`.
    SpatialGrid refined(int factor = 2) const;
    SpatialGrid with_half_extent(double half_extent) const;

    bool operator==(const SpatialGrid& other) const noexcept;

private:
    int dim_;
    double half_extent_;
    double spacing_;
    BoundaryMode mode_;
    std::size_t n_;
};

using Samples = std::vector<double>;
using VectorSamples = std::vector<Samples>;

Samples sample(const SpatialGrid& grid, const std::function<double(const Point&)>& f);

/// Plain grid quadrature: sum of values times cell volume (compensated).
double integrate_grid(const SpatialGrid& grid, std::span<const double> values);

/// Discrete L2 norm over the whole grid.
double grid_l2_norm(const SpatialGrid& grid, std::span<const double> values);

struct StripSpec {
    double a;
    double b;
    StripSpec(double a_, double b_);
};

/// Space-time samples u(t_i, x_j) on strictly increasing positive times.
class SpaceTimeField {
public:
    SpaceTimeField(SpatialGrid grid, std::vector<double> times, std::vector<double> values, std::string label = {});

    const SpatialGrid& grid() const noexcept { return grid_; }
    const std::vector<double>& times() const noexcept { return times_; }
    const std::string& label() const noexcept { return label_; }
    std::size_t time_count() const noexcept { return times_.size(); }

    std::span<const double> slice(std::size_t i) const;
    /// Index of a sample time equal to t up to 1e-12 relative; throws Coverage otherwise.
    std::size_t time_index(double t) const;

    SpaceTimeField scaled(double c) const;

    static SpaceTimeField from_function(const SpatialGrid& grid, std::vector<double> times,
                                        const std::function<double(double, const Point&)>& u,
                                        std::string label = {});

private:
    SpatialGrid grid_;
    std::vector<double> times_;
    std::vector<double> values_;
    std::string label_;
};

/// Quadrature of samples over the ball B(center, radius).
///
/// 1D: cell weights clipped by the exact overlap of [x_j - dx/2, x_j + dx/2]
/// with the interval. 2D: full cell weight when the cell center lies in the
/// ball. Periodic grids use the periodic image of the ball; zero-padded grids
/// treat everything outside [-L, L)^n as zero.
double integrate_ball(const SpatialGrid& grid, std::span<const double> values, const Point& center, double radius);

/// Quadrature over the annulus inner_radius <= |x - center| <= outer_radius.
double integrate_annulus(const SpatialGrid& grid, std::span<const double> values, const Point& center,
                         double inner_radius, double outer_radius);

/// (int_a^b int_{B(center,R)} |u|^2)^{1/2}, trapezoid in time.
double integrate_strip_L2(const SpaceTimeField& u, const StripSpec& strip, double radius,
                          const Point& center = {0.0, 0.0});

/// Second-order central differences; wraps on periodic grids and uses
/// second-order one-sided stencils at the edges of zero-padded grids.
VectorSamples gradient(const SpatialGrid& grid, std::span<const double> values);

/// Pointwise Euclidean norm of a vector field.
Samples magnitude(const VectorSamples& v);

struct ExtentAudit {
    double value;
    double value_enlarged;
    double relative_change;
    bool passed;
};

/// Evaluates a quantity at half extent L and 1.5L and checks the relative
/// change stays below `tolerance` (0.1% by default).
ExtentAudit extent_audit(const std::function<double(double)>& quantity, double half_extent,
                         double tolerance = 1e-3);

void write_field_csv(std::ostream& os, const SpaceTimeField& field);
SpaceTimeField read_field_csv(std::istream& is, std::string label = {});

}  // namespace caloric
