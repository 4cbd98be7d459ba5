#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "caloric/caloric_zoo.hpp"
#include "caloric/grid_field.hpp"
#include "caloric/probes.hpp"
#include "caloric/semigroup.hpp"

namespace caloric {

// ------------------------------------------------------------ growth fit

enum class GrowthVerdict { pass, fail, inconclusive };
std::string to_string(GrowthVerdict v);

struct GrowthFit {
    StripSpec strip{1.0, 2.0};
    std::vector<double> radii;
    std::vector<double> l2_values;
    double gamma_hat = 0.0;
    double logC_hat = 0.0;
    double r2_of_fit = 1.0;
    /// First radius index used by the fit (upper half of the radii).
    std::size_t fit_start = 0;
    GrowthVerdict verdict = GrowthVerdict::inconclusive;
};

/// Classification of a fitted exponent: PASS when gamma <= 0, or gamma < 0.24
/// with r^2 >= 0.9; FAIL when gamma > 0.26 with r^2 >= 0.9; INCONCLUSIVE for
/// the borderline band [0.24, 0.26] and for poor fits.
GrowthVerdict classify_growth(double gamma_hat, double r2);

/// Least-squares fit of log ||u||_{L2((a,b) x B(center,R))} against R^2/(b-a)
/// over the upper half of `radii` (at least 5, strictly increasing, max <= 0.8L).
GrowthFit strip_growth_fit(const SpaceTimeField& u, const StripSpec& strip, const std::vector<double>& radii,
                           const Point& center = {0.0, 0.0});

// -------------------------------------------------------------- tent norm

struct BallFamily {
    std::vector<Point> centers;
    std::vector<double> radii;

    /// Centers on a lattice of the given spacing inside [-extent, extent]^n.
    static BallFamily lattice(int dim, double extent, double spacing, std::vector<double> radii);
    std::string describe() const;
    double max_radius() const;
};

struct BallValue {
    Point center;
    double radius;
    double value;
};

struct TentNorm {
    double value = 0.0;
    Point argmax_center{0.0, 0.0};
    double argmax_radius = 0.0;
    std::vector<BallValue> per_ball;
};

/// Geometric ladder t_min q^i up to t_max merged with `extra` times (e.g. r^2
/// of every ball), sorted and deduplicated.
std::vector<double> geometric_ladder(double t_min, double t_max, double q, const std::vector<double>& extra = {});

/// Ladder suitable for tent norms on `grid`: t_min = dx^2, q = 1.3, merged with r^2.
std::vector<double> tent_ladder(const SpatialGrid& grid, const BallFamily& family, double q = 1.3);

/// Carleson quantity (1/|B| int_0^{r^2} int_B |u|^2)^{1/2} for one ball. The
/// time integral is a trapezoid in log t; the head [0, t_0] assumes power-law
/// behaviour g ~ t^p fitted from the first two samples.
double carleson_value(const SpaceTimeField& u, const Point& center, double radius);

TentNorm tent_norm(const SpaceTimeField& u, const BallFamily& family);

/// Tent norm of e^{t Laplacian} f over the ladder tent_ladder(grid, family).
TentNorm bmo_inv_norm(const SpatialGrid& grid, std::span<const double> f, const BallFamily& family,
                      const HeatOperatorConfig& cfg = {});
TentNorm bmo_inv_norm(const SpatialGrid& grid, const InitialDatum& f, const BallFamily& family,
                      const HeatOperatorConfig& cfg = {});

// ----------------------------------------------------- Schwartz seminorms

struct SeminormOrder {
    int M;
    explicit SeminormOrder(int M_);
};

/// P_M(phi) = max over |alpha|+|beta| <= M of sup_x |x^alpha d^beta phi(x)|.
double schwartz_seminorm(const SchwartzProbe& phi, SeminormOrder order);
double schwartz_seminorm(const TestFunction& phi, SeminormOrder order);

// --------------------------------------------------- tent to strip bound

struct StripBoundReport {
    double sup_F = 0.0;
    Point argmax{0.0, 0.0};
    double tent_norm = 0.0;
    double ratio = 0.0;
};

/// F(x) = (int_a^b int_{B(x, sqrt b)} |u|^2)^{1/2} over `centers`, compared
/// with the tent norm over `family`.
StripBoundReport tent_to_strip_bound(const SpaceTimeField& u, const StripSpec& strip, const std::vector<Point>& centers,
                                     const BallFamily& family);

// ------------------------------------------------------------ Caccioppoli

/// (t_lo, t_hi) x {inner_radius <= |x - center| <= outer_radius}; inner_radius 0 is a ball.
struct CylinderRegion {
    double t_lo;
    double t_hi;
    Point center{0.0, 0.0};
    double inner_radius = 0.0;
    double outer_radius = 1.0;
};

/// int int_inner |grad u|^2 / ((1/r^2 + 1/(s-a)) int int_enlarged |u|^2), with r
/// the spatial margin between the two sets and (s, a) their start times.
double caccioppoli_ratio(const SpaceTimeField& u, const CylinderRegion& inner, const CylinderRegion& enlarged);

// ------------------------------------------------------------ NormReport

struct NormReportRow {
    std::string quantity;
    double value;
    std::string family_spec;
    int refinement_level;
    double stability_pct;
};

void write_norm_report(std::ostream& os, const std::vector<NormReportRow>& rows);

/// Relative change in percent between two refinement levels (0 when both vanish).
double stability_pct(double coarse, double fine);

}  // namespace caloric
