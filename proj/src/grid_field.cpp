#include "caloric/grid_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "caloric/coverage.hpp"
#include "caloric/error.hpp"
#include "caloric/numeric.hpp"

namespace caloric {

std::string to_string(BoundaryMode mode) {
    return mode == BoundaryMode::periodic ? "periodic" : "zero_padded";
}

BoundaryMode parse_boundary_mode(const std::string& text) {
    if (text == "periodic") return BoundaryMode::periodic;
    if (text == "zero_padded") return BoundaryMode::zero_padded;
    throw Error(ErrorKind::Argument, "unknown boundary mode '" + text + "'");
}

SpatialGrid::SpatialGrid(int dim, double half_extent, double spacing, BoundaryMode mode)
    : dim_(dim), half_extent_(half_extent), spacing_(spacing), mode_(mode), n_(0) {
    require(dim == 1 || dim == 2, ErrorKind::Argument, "grid dimension must be 1 or 2");
    require(half_extent > 0.0 && std::isfinite(half_extent), ErrorKind::Argument, "half extent must be positive");
    require(spacing > 0.0 && std::isfinite(spacing), ErrorKind::Argument, "spacing must be positive");
    require(spacing < half_extent / 4.0, ErrorKind::Argument, "spacing must satisfy dx < L/4");
    const double count = std::round(2.0 * half_extent / spacing);
    require(count >= 8.0, ErrorKind::Argument, "grid needs at least 8 points per axis");
    n_ = static_cast<std::size_t>(count);
    spacing_ = 2.0 * half_extent / count;
}

Point SpatialGrid::point(std::size_t k) const noexcept {
    if (dim_ == 1) {
        return {coordinate(k), 0.0};
    }
    return {coordinate(k / n_), coordinate(k % n_)};
}

SpatialGrid SpatialGrid::refined(int factor) const {
    return SpatialGrid(dim_, half_extent_, spacing_ / factor, mode_);
}

SpatialGrid SpatialGrid::with_half_extent(double half_extent) const {
    return SpatialGrid(dim_, half_extent, spacing_, mode_);
}

bool SpatialGrid::operator==(const SpatialGrid& other) const noexcept {
    return dim_ == other.dim_ && half_extent_ == other.half_extent_ && spacing_ == other.spacing_ &&
           mode_ == other.mode_ && n_ == other.n_;
}

Samples sample(const SpatialGrid& grid, const std::function<double(const Point&)>& f) {
    Samples out(grid.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = f(grid.point(k));
    }
    return out;
}

double integrate_grid(const SpatialGrid& grid, std::span<const double> values) {
    require(values.size() == grid.size(), ErrorKind::Argument, "sample count does not match grid");
    return compensated_sum(values) * grid.cell_volume();
}

double grid_l2_norm(const SpatialGrid& grid, std::span<const double> values) {
    require(values.size() == grid.size(), ErrorKind::Argument, "sample count does not match grid");
    CompensatedSum acc;
    for (double v : values) acc += v * v;
    return std::sqrt(acc.value() * grid.cell_volume());
}

StripSpec::StripSpec(double a_, double b_) : a(a_), b(b_) {
    require(std::isfinite(a) && std::isfinite(b) && 0.0 < a && a < b, ErrorKind::Argument,
            "strip requires 0 < a < b (got a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")");
}

SpaceTimeField::SpaceTimeField(SpatialGrid grid, std::vector<double> times, std::vector<double> values,
                               std::string label)
    : grid_(std::move(grid)), times_(std::move(times)), values_(std::move(values)), label_(std::move(label)) {
    require(!times_.empty(), ErrorKind::Argument, "field needs at least one time");
    for (std::size_t i = 0; i < times_.size(); ++i) {
        require(times_[i] > 0.0 && std::isfinite(times_[i]), ErrorKind::Argument, "field times must be positive");
        if (i > 0) {
            require(times_[i] > times_[i - 1], ErrorKind::Argument, "field times must be strictly increasing");
        }
    }
    require(values_.size() == times_.size() * grid_.size(), ErrorKind::Argument,
            "field values do not match grid x times");
    for (double v : values_) {
        require(std::isfinite(v), ErrorKind::Data, "field '" + label_ + "' contains non-finite values");
    }
}

std::span<const double> SpaceTimeField::slice(std::size_t i) const {
    require(i < times_.size(), ErrorKind::Argument, "time slice index out of range");
    return std::span<const double>(values_).subspan(i * grid_.size(), grid_.size());
}

std::size_t SpaceTimeField::time_index(double t) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), t * (1.0 - 1e-12));
    if (it != times_.end() && std::abs(*it - t) <= 1e-12 * std::max(1.0, std::abs(t))) {
        return static_cast<std::size_t>(it - times_.begin());
    }
    throw Error(ErrorKind::Coverage, "field '" + label_ + "' has no sample at t=" + std::to_string(t));
}

SpaceTimeField SpaceTimeField::scaled(double c) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= c;
    return SpaceTimeField(grid_, times_, std::move(v), label_);
}

SpaceTimeField SpaceTimeField::from_function(const SpatialGrid& grid, std::vector<double> times,
                                             const std::function<double(double, const Point&)>& u,
                                             std::string label) {
    std::vector<double> values(times.size() * grid.size());
    parallel_for(times.size(), [&](std::size_t i) {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            values[i * grid.size() + k] = u(times[i], grid.point(k));
        }
    });
    return SpaceTimeField(grid, std::move(times), std::move(values), std::move(label));
}

namespace {

double overlap(double lo1, double hi1, double lo2, double hi2) {
    return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

double periodic_delta(double d, double period) {
    return d - period * std::round(d / period);
}

double interval_weight(double d, double dx, double radius, double period, bool periodic) {
    double w = overlap(d - 0.5 * dx, d + 0.5 * dx, -radius, radius);
    if (periodic && 2.0 * radius > period - dx) {
        w += overlap(d - 0.5 * dx + period, d + 0.5 * dx + period, -radius, radius);
        w += overlap(d - 0.5 * dx - period, d + 0.5 * dx - period, -radius, radius);
    }
    return w;
}

// Cell weights are differenced per cell, so thin far annuli do not cancel.
double ball_1d(const SpatialGrid& grid, std::span<const double> values, double center, double radius,
               double inner = 0.0) {
    const double dx = grid.spacing();
    const double L = grid.half_extent();
    const double period = 2.0 * L;
    const bool periodic = grid.mode() == BoundaryMode::periodic;
    CompensatedSum acc;
    for (std::size_t j = 0; j < grid.points_per_axis(); ++j) {
        const double x = grid.coordinate(j);
        const double d = periodic ? periodic_delta(x - center, period) : x - center;
        double w = interval_weight(d, dx, radius, period, periodic);
        if (inner > 0.0) w -= interval_weight(d, dx, inner, period, periodic);
        if (w > 0.0) {
            acc += w * values[j];
        }
    }
    return acc.value();
}

double ball_2d(const SpatialGrid& grid, std::span<const double> values, const Point& center, double radius,
               double inner = 0.0) {
    const std::size_t n = grid.points_per_axis();
    const double period = 2.0 * grid.half_extent();
    const bool periodic = grid.mode() == BoundaryMode::periodic;
    const double r2 = radius * radius;
    const double in2 = inner * inner;
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = grid.coordinate(i) - center[0];
        if (periodic) dx = periodic_delta(dx, period);
        if (std::abs(dx) > radius) continue;
        for (std::size_t j = 0; j < n; ++j) {
            double dy = grid.coordinate(j) - center[1];
            if (periodic) dy = periodic_delta(dy, period);
            const double d2 = dx * dx + dy * dy;
            if (d2 <= r2 && (inner == 0.0 || d2 >= in2)) {
                acc += values[i * n + j];
            }
        }
    }
    return acc.value() * grid.cell_volume();
}

}  // namespace

double integrate_ball(const SpatialGrid& grid, std::span<const double> values, const Point& center, double radius) {
    coverage::mark("integrate_ball");
    require(values.size() == grid.size(), ErrorKind::Argument, "sample count does not match grid");
    require(radius > 0.0, ErrorKind::Argument, "ball radius must be positive");
    require(radius <= grid.half_extent() * (1.0 + 1e-12), ErrorKind::DomainTooSmall,
            "ball radius " + std::to_string(radius) + " exceeds grid half extent " +
                std::to_string(grid.half_extent()));
    return grid.dim() == 1 ? ball_1d(grid, values, center[0], radius) : ball_2d(grid, values, center, radius);
}

double integrate_annulus(const SpatialGrid& grid, std::span<const double> values, const Point& center,
                         double inner_radius, double outer_radius) {
    require(0.0 <= inner_radius && inner_radius < outer_radius, ErrorKind::Argument, "annulus radii out of order");
    require(values.size() == grid.size(), ErrorKind::Argument, "sample count does not match grid");
    require(outer_radius <= grid.half_extent() * (1.0 + 1e-12), ErrorKind::DomainTooSmall,
            "annulus radius " + std::to_string(outer_radius) + " exceeds grid half extent");
    return grid.dim() == 1 ? ball_1d(grid, values, center[0], outer_radius, inner_radius)
                           : ball_2d(grid, values, center, outer_radius, inner_radius);
}

double integrate_strip_L2(const SpaceTimeField& u, const StripSpec& strip, double radius, const Point& center) {
    coverage::mark("integrate_strip_L2");
    const auto& times = u.times();
    const double tol = 1e-12 * strip.b;
    const auto inside = std::count_if(times.begin(), times.end(),
                                      [&](double t) { return t >= strip.a - tol && t <= strip.b + tol; });
    require(inside >= 4, ErrorKind::InsufficientResolution,
            "fewer than 4 time samples inside [" + std::to_string(strip.a) + ", " + std::to_string(strip.b) + "]");
    require(times.front() <= strip.a + tol && times.back() >= strip.b - tol, ErrorKind::Coverage,
            "field times do not cover the strip");
    std::vector<double> used_t;
    std::vector<double> g;
    Samples sq(u.grid().size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        // keep one bracketing sample on each side for endpoint interpolation
        const bool needed = (times[i] >= strip.a - tol && times[i] <= strip.b + tol) ||
                            (i + 1 < times.size() && times[i + 1] > strip.a + tol && times[i] < strip.a) ||
                            (i > 0 && times[i - 1] < strip.b - tol && times[i] > strip.b);
        if (!needed) continue;
        const auto s = u.slice(i);
        for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = s[k] * s[k];
        used_t.push_back(times[i]);
        g.push_back(integrate_ball(u.grid(), sq, center, radius));
    }
    return std::sqrt(std::max(0.0, trapezoid_on(used_t, g, strip.a, strip.b)));
}

VectorSamples gradient(const SpatialGrid& grid, std::span<const double> values) {
    coverage::mark("gradient");
    require(values.size() == grid.size(), ErrorKind::Argument, "sample count does not match grid");
    const std::size_t n = grid.points_per_axis();
    const double h = grid.spacing();
    const bool periodic = grid.mode() == BoundaryMode::periodic;
    // derivative along a strided line of n samples
    auto diff_line = [&](auto get, auto put) {
        for (std::size_t j = 0; j < n; ++j) {
            double d;
            if (j > 0 && j + 1 < n) {
                d = (get(j + 1) - get(j - 1)) / (2.0 * h);
            } else if (periodic) {
                const std::size_t up = (j + 1) % n;
                const std::size_t down = (j + n - 1) % n;
                d = (get(up) - get(down)) / (2.0 * h);
            } else if (j == 0) {
                d = (-3.0 * get(0) + 4.0 * get(1) - get(2)) / (2.0 * h);
            } else {
                d = (3.0 * get(n - 1) - 4.0 * get(n - 2) + get(n - 3)) / (2.0 * h);
            }
            put(j, d);
        }
    };
    VectorSamples out(static_cast<std::size_t>(grid.dim()), Samples(grid.size()));
    if (grid.dim() == 1) {
        diff_line([&](std::size_t j) { return values[j]; }, [&](std::size_t j, double d) { out[0][j] = d; });
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        diff_line([&](std::size_t j) { return values[j * n + i]; },
                  [&](std::size_t j, double d) { out[0][j * n + i] = d; });
        diff_line([&](std::size_t j) { return values[i * n + j]; },
                  [&](std::size_t j, double d) { out[1][i * n + j] = d; });
    }
    return out;
}

Samples magnitude(const VectorSamples& v) {
    require(!v.empty(), ErrorKind::Argument, "empty vector field");
    Samples out(v[0].size(), 0.0);
    for (const auto& c : v) {
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += c[k] * c[k];
    }
    for (double& x : out) x = std::sqrt(x);
    return out;
}

ExtentAudit extent_audit(const std::function<double(double)>& quantity, double half_extent, double tolerance) {
    ExtentAudit audit{};
    audit.value = quantity(half_extent);
    audit.value_enlarged = quantity(1.5 * half_extent);
    const double scale = std::max(std::abs(audit.value), std::abs(audit.value_enlarged));
    audit.relative_change = scale == 0.0 ? 0.0 : std::abs(audit.value_enlarged - audit.value) / scale;
    audit.passed = audit.relative_change < tolerance;
    return audit;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_field_csv(std::ostream& os, const SpaceTimeField& field) {
    const auto& g = field.grid();
    os << "# grid n=" << g.dim() << " L=" << fmt_double(g.half_extent()) << " dx=" << fmt_double(g.spacing())
       << " mode=" << to_string(g.mode()) << '\n';
    for (std::size_t i = 0; i < field.time_count(); ++i) {
        const auto s = field.slice(i);
        const std::string t = fmt_double(field.times()[i]);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const Point p = g.point(k);
            os << t << ',' << fmt_double(p[0]);
            if (g.dim() == 2) os << ',' << fmt_double(p[1]);
            os << ',' << fmt_double(s[k]) << '\n';
        }
    }
}

SpaceTimeField read_field_csv(std::istream& is, std::string label) {
    std::string header;
    require(static_cast<bool>(std::getline(is, header)) && header.rfind("# grid", 0) == 0, ErrorKind::Data,
            "field CSV must start with '# grid' header");
    std::map<std::string, std::string> kv;
    std::istringstream hs(header.substr(6));
    for (std::string tok; hs >> tok;) {
        const auto eq = tok.find('=');
        if (eq != std::string::npos) kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    require(kv.count("n") && kv.count("L") && kv.count("dx") && kv.count("mode"), ErrorKind::Data,
            "field CSV header missing n/L/dx/mode");
    const SpatialGrid grid(std::stoi(kv["n"]), std::stod(kv["L"]), std::stod(kv["dx"]),
                           parse_boundary_mode(kv["mode"]));
    std::vector<double> times;
    std::vector<double> values;
    for (std::string line; std::getline(is, line);) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> cols;
        std::istringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cols.push_back(std::stod(c));
        require(cols.size() == static_cast<std::size_t>(grid.dim()) + 2, ErrorKind::Data, "bad field CSV row");
        if (times.empty() || cols[0] != times.back()) times.push_back(cols[0]);
        values.push_back(cols.back());
    }
    return SpaceTimeField(grid, std::move(times), std::move(values), std::move(label));
}

}  // namespace caloric
