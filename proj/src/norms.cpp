#include "caloric/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>

#include "caloric/coverage.hpp"
#include "caloric/error.hpp"
#include "caloric/ids.hpp"
#include "caloric/numeric.hpp"
#include "caloric/polynomial.hpp"

namespace caloric {

// ------------------------------------------------------------ growth fit

std::string to_string(GrowthVerdict v) {
    switch (v) {
        case GrowthVerdict::pass: return "PASS";
        case GrowthVerdict::fail: return "FAIL";
        case GrowthVerdict::inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

GrowthVerdict classify_growth(double gamma_hat, double r2) {
    if (gamma_hat <= 0.0) return GrowthVerdict::pass;
    if (gamma_hat >= 0.24 && gamma_hat <= 0.26) return GrowthVerdict::inconclusive;
    if (r2 < 0.9) return GrowthVerdict::inconclusive;
    return gamma_hat < 0.24 ? GrowthVerdict::pass : GrowthVerdict::fail;
}

GrowthFit strip_growth_fit(const SpaceTimeField& u, const StripSpec& strip, const std::vector<double>& radii,
                           const Point& center) {
    coverage::mark("strip_growth_fit");
    require(radii.size() >= 5, ErrorKind::Argument, "growth fit needs at least 5 radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        require(radii[i] > 0.0 && (i == 0 || radii[i] > radii[i - 1]), ErrorKind::Argument,
                "growth-fit radii must be positive and strictly increasing");
    }
    require(radii.back() <= 0.8 * u.grid().half_extent() * (1.0 + 1e-12), ErrorKind::DomainTooSmall,
            "largest radius " + std::to_string(radii.back()) + " exceeds 0.8 L = " +
                std::to_string(0.8 * u.grid().half_extent()));
    GrowthFit fit;
    fit.strip = strip;
    fit.radii = radii;
    fit.l2_values.resize(radii.size());
    parallel_for(radii.size(), [&](std::size_t i) { fit.l2_values[i] = integrate_strip_L2(u, strip, radii[i], center); });
    for (double v : fit.l2_values) require(std::isfinite(v), ErrorKind::Data, "non-finite strip norm");

    fit.fit_start = radii.size() / 2;
    std::vector<double> xs, ys;
    for (std::size_t i = fit.fit_start; i < radii.size(); ++i) {
        if (fit.l2_values[i] <= 0.0) continue;
        xs.push_back(radii[i] * radii[i] / (strip.b - strip.a));
        ys.push_back(std::log(fit.l2_values[i]));
    }
    if (xs.size() < 2) {
        // identically zero on the fit range: no growth at all
        fit.gamma_hat = 0.0;
        fit.logC_hat = -std::numeric_limits<double>::infinity();
        fit.r2_of_fit = 1.0;
    } else {
        const LinearFit lf = fit_line(xs, ys);
        fit.gamma_hat = lf.slope;
        fit.logC_hat = lf.intercept;
        fit.r2_of_fit = lf.r2;
    }
    fit.verdict = classify_growth(fit.gamma_hat, fit.r2_of_fit);
    return fit;
}

// -------------------------------------------------------------- tent norm

BallFamily BallFamily::lattice(int dim, double extent, double spacing, std::vector<double> radii) {
    require(spacing > 0.0 && extent >= 0.0, ErrorKind::Argument, "invalid lattice");
    BallFamily f;
    f.radii = std::move(radii);
    const int n = static_cast<int>(std::floor(extent / spacing + 1e-9));
    for (int i = -n; i <= n; ++i) {
        if (dim == 1) {
            f.centers.push_back({i * spacing, 0.0});
            continue;
        }
        for (int j = -n; j <= n; ++j) f.centers.push_back({i * spacing, j * spacing});
    }
    return f;
}

std::string BallFamily::describe() const {
    std::string s = "centers=" + std::to_string(centers.size()) + ";radii=";
    for (std::size_t i = 0; i < radii.size(); ++i) s += (i ? "|" : "") + format_number(radii[i]);
    return s;
}

double BallFamily::max_radius() const {
    require(!radii.empty(), ErrorKind::Argument, "ball family has no radii");
    return *std::max_element(radii.begin(), radii.end());
}

std::vector<double> geometric_ladder(double t_min, double t_max, double q, const std::vector<double>& extra) {
    require(t_min > 0.0 && t_max >= t_min && q > 1.0, ErrorKind::Argument, "invalid geometric ladder");
    std::vector<double> t;
    for (double v = t_min; v < t_max * (1.0 - 1e-9); v *= q) t.push_back(v);
    t.push_back(t_max);
    for (double e : extra) {
        if (e > 0.0) t.push_back(e);
    }
    std::sort(t.begin(), t.end());
    std::vector<double> out;
    for (double v : t) {
        if (!out.empty() && std::abs(v - out.back()) <= 1e-9 * v) {
            // prefer the exactly requested extra value
            if (std::find(extra.begin(), extra.end(), v) != extra.end()) out.back() = v;
            continue;
        }
        out.push_back(v);
    }
    return out;
}

std::vector<double> tent_ladder(const SpatialGrid& grid, const BallFamily& family, double q) {
    std::vector<double> r2;
    for (double r : family.radii) r2.push_back(r * r);
    const double rmax = family.max_radius();
    return geometric_ladder(grid.spacing() * grid.spacing(), rmax * rmax, q, r2);
}

namespace {

// int_{t0}^{t1} g with g interpolated as a power law through both ends
// (exact for constants and pure powers); linear when a sample vanishes.
double power_segment(double t0, double g0, double t1, double g1) {
    if (g0 > 0.0 && g1 > 0.0) {
        const double p = std::log(g1 / g0) / std::log(t1 / t0);
        if (std::abs(p + 1.0) > 1e-6) return (t1 * g1 - t0 * g0) / (1.0 + p);
        return g0 * t0 * std::log(t1 / t0);
    }
    return 0.5 * (g0 + g1) * (t1 - t0);
}

double power_interp(double t0, double g0, double t1, double g1, double t) {
    if (g0 > 0.0 && g1 > 0.0) return g0 * std::pow(t / t0, std::log(g1 / g0) / std::log(t1 / t0));
    return g0 + (g1 - g0) * (t - t0) / (t1 - t0);
}

}  // namespace

double carleson_value(const SpaceTimeField& u, const Point& center, double radius) {
    const auto& times = u.times();
    const double T = radius * radius;
    require(times.back() >= T * (1.0 - 1e-12), ErrorKind::Coverage,
            "field times end at " + std::to_string(times.back()) + " before r^2 = " + std::to_string(T));
    require(times.front() < T, ErrorKind::Coverage, "no samples inside the Carleson box");
    const SpatialGrid& grid = u.grid();
    const Samples ones(grid.size(), 1.0);
    const double measure = integrate_ball(grid, ones, center, radius);
    require(measure > 0.0, ErrorKind::Degenerate, "ball contains no grid cells");

    std::vector<double> ts, gs;
    Samples sq(grid.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto s = u.slice(i);
        for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = s[k] * s[k];
        ts.push_back(times[i]);
        gs.push_back(integrate_ball(grid, sq, center, radius));
        if (times[i] >= T * (1.0 - 1e-12)) break;
    }
    CompensatedSum acc;
    // head [0, t_0]: g ~ g_0 (t/t_0)^p
    double p = 0.0;
    if (ts.size() >= 2 && gs[0] > 0.0 && gs[1] > 0.0) p = std::log(gs[1] / gs[0]) / std::log(ts[1] / ts[0]);
    p = std::clamp(p, -0.95, 50.0);
    acc += ts[0] * gs[0] / (1.0 + p);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (ts[i] <= T * (1.0 + 1e-12)) {
            acc += power_segment(ts[i - 1], gs[i - 1], ts[i], gs[i]);
        } else {
            const double gT = power_interp(ts[i - 1], gs[i - 1], ts[i], gs[i], T);
            acc += power_segment(ts[i - 1], gs[i - 1], T, gT);
        }
    }
    return std::sqrt(std::max(0.0, acc.value()) / measure);
}

TentNorm tent_norm(const SpaceTimeField& u, const BallFamily& family) {
    coverage::mark("tent_norm");
    require(!family.centers.empty() && !family.radii.empty(), ErrorKind::Argument, "empty ball family");
    TentNorm out;
    const std::size_t nr = family.radii.size();
    out.per_ball.resize(family.centers.size() * nr);
    parallel_for(out.per_ball.size(), [&](std::size_t k) {
        const Point& c = family.centers[k / nr];
        const double r = family.radii[k % nr];
        out.per_ball[k] = {c, r, carleson_value(u, c, r)};
    });
    out.value = -1.0;
    for (const auto& b : out.per_ball) {
        if (b.value > out.value) {
            out.value = b.value;
            out.argmax_center = b.center;
            out.argmax_radius = b.radius;
        }
    }
    return out;
}

TentNorm bmo_inv_norm(const SpatialGrid& grid, std::span<const double> f, const BallFamily& family,
                      const HeatOperatorConfig& cfg) {
    coverage::mark("bmo_inv_norm");
    const auto ladder = tent_ladder(grid, family);
    return tent_norm(evolve_to_field(grid, f, ladder, cfg, "heat(f)"), family);
}

TentNorm bmo_inv_norm(const SpatialGrid& grid, const InitialDatum& f, const BallFamily& family,
                      const HeatOperatorConfig& cfg) {
    const Samples s = f.sample(grid);
    return bmo_inv_norm(grid, s, family, cfg);
}

// ----------------------------------------------------- Schwartz seminorms

SeminormOrder::SeminormOrder(int M_) : M(M_) {
    require(M >= 0 && M <= 12, ErrorKind::Argument, "seminorm order must be in 0..12 (exact derivatives available)");
}

namespace {

// sup of |f| on [lo, hi]: dense grid, then repeated zoom around the argmax.
template <typename F>
double sup_abs_1d(F f, double lo, double hi, std::size_t n = 2001) {
    double h = (hi - lo) / static_cast<double>(n - 1);
    double best = -1.0, arg = lo;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + h * static_cast<double>(i);
        const double v = std::abs(f(x));
        if (v > best) {
            best = v;
            arg = x;
        }
    }
    for (int level = 0; level < 10; ++level) {
        const double a = std::max(lo, arg - 2.0 * h), b = std::min(hi, arg + 2.0 * h);
        h = (b - a) / 40.0;
        for (int i = 0; i <= 40; ++i) {
            const double x = a + h * i;
            const double v = std::abs(f(x));
            if (v > best) {
                best = v;
                arg = x;
            }
        }
    }
    return best;
}

double stable_sup_1d(const std::function<double(double)>& f, double lo, double hi) {
    double prev = sup_abs_1d(f, lo, hi, 1001);
    for (std::size_t n = 2001; n <= 64001; n = 2 * n - 1) {
        const double cur = sup_abs_1d(f, lo, hi, n);
        if (std::abs(cur - prev) <= 1e-4 * std::max(std::abs(cur), 1e-300)) return std::max(cur, prev);
        prev = cur;
    }
    return prev;
}

std::vector<std::array<int, 4>> multi_indices(int dim, int M) {
    std::vector<std::array<int, 4>> out;  // alpha0, alpha1, beta0, beta1
    for (int a0 = 0; a0 <= M; ++a0) {
        for (int a1 = 0; a1 <= (dim == 2 ? M : 0); ++a1) {
            for (int b0 = 0; b0 <= M; ++b0) {
                for (int b1 = 0; b1 <= (dim == 2 ? M : 0); ++b1) {
                    if (a0 + a1 + b0 + b1 <= M) out.push_back({a0, a1, b0, b1});
                }
            }
        }
    }
    return out;
}

}  // namespace

double schwartz_seminorm(const SchwartzProbe& phi, SeminormOrder order) {
    coverage::mark("schwartz_seminorm");
    const int M = order.M;
    const double s = phi.sigma();
    // separable: sup of a product of one-variable factors is the product of sups
    std::vector<std::vector<std::vector<double>>> axis_sup(
        static_cast<std::size_t>(phi.dim()),
        std::vector<std::vector<double>>(M + 1, std::vector<double>(M + 1, 0.0)));
    for (int a = 0; a < phi.dim(); ++a) {
        for (int beta = 0; beta <= M; ++beta) {
            const auto q = phi.axis_derivative_poly(a, beta);
            for (int alpha = 0; alpha + beta <= M; ++alpha) {
                const double deg = static_cast<double>(alpha + q.size());
                const double W = s * (std::sqrt(deg) + 8.0);
                axis_sup[a][alpha][beta] = stable_sup_1d(
                    [&](double x) { return std::pow(x, alpha) * poly::eval(q, x) * std::exp(-x * x / (2.0 * s * s)); },
                    -W, W);
            }
        }
    }
    double best = 0.0;
    for (const auto& mi : multi_indices(phi.dim(), M)) {
        double v = axis_sup[0][mi[0]][mi[2]];
        if (phi.dim() == 2) v *= axis_sup[1][mi[1]][mi[3]];
        best = std::max(best, v);
    }
    return best;
}

double schwartz_seminorm(const TestFunction& phi, SeminormOrder order) {
    coverage::mark("schwartz_seminorm");
    const int M = order.M;
    const Point c = phi.center();
    const double rho = phi.radius();
    if (phi.dim() == 1) {
        double best = 0.0;
        for (int beta = 0; beta <= M; ++beta) {
            const auto form = phi.derivative_form({beta, 0});
            for (int alpha = 0; alpha + beta <= M; ++alpha) {
                best = std::max(best, stable_sup_1d(
                                          [&](double x) { return std::pow(x, alpha) * phi.evaluate(form, {x, 0.0}); },
                                          c[0] - rho, c[0] + rho));
            }
        }
        return best;
    }
    // 2D: tabulate each derivative once on a grid over the support box, then
    // zoom around the best few index pairs.
    const int n = 161;
    const double h = 2.0 * rho / (n - 1);
    auto xs = [&](int i, int axis) { return c[axis] - rho + h * i; };
    struct Candidate {
        double value;
        std::array<int, 4> mi;
        Point arg;
    };
    std::vector<Candidate> cands;
    for (int b0 = 0; b0 <= M; ++b0) {
        for (int b1 = 0; b0 + b1 <= M; ++b1) {
            const auto form = phi.derivative_form({b0, b1});
            std::vector<double> table(static_cast<std::size_t>(n) * n);
            parallel_for(table.size(), [&](std::size_t k) {
                table[k] = phi.evaluate(form, {xs(static_cast<int>(k / n), 0), xs(static_cast<int>(k % n), 1)});
            });
            for (int a0 = 0; a0 + b0 + b1 <= M; ++a0) {
                for (int a1 = 0; a0 + a1 + b0 + b1 <= M; ++a1) {
                    Candidate best{-1.0, {a0, a1, b0, b1}, c};
                    for (std::size_t k = 0; k < table.size(); ++k) {
                        const Point x{xs(static_cast<int>(k / n), 0), xs(static_cast<int>(k % n), 1)};
                        const double v = std::abs(std::pow(x[0], a0) * std::pow(x[1], a1) * table[k]);
                        if (v > best.value) best = {v, best.mi, x};
                    }
                    cands.push_back(best);
                }
            }
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
    const double coarse_best = cands.front().value;
    double best = 0.0;
    for (const auto& cand : cands) {
        if (cand.value < 0.9 * coarse_best) break;
        const auto& mi = cand.mi;
        const auto form = phi.derivative_form({mi[2], mi[3]});
        auto f = [&](const Point& x) {
            return std::abs(std::pow(x[0], mi[0]) * std::pow(x[1], mi[1]) * phi.evaluate(form, x));
        };
        Point arg = cand.arg;
        double v = cand.value;
        double step = h;
        for (int level = 0; level < 8; ++level) {
            const Point base = arg;
            for (int i = -10; i <= 10; ++i) {
                for (int j = -10; j <= 10; ++j) {
                    const Point x{base[0] + step * i / 5.0, base[1] + step * j / 5.0};
                    const double fx = f(x);
                    if (fx > v) {
                        v = fx;
                        arg = x;
                    }
                }
            }
            step /= 5.0;
        }
        best = std::max(best, v);
    }
    return best;
}

// --------------------------------------------------- tent to strip bound

StripBoundReport tent_to_strip_bound(const SpaceTimeField& u, const StripSpec& strip, const std::vector<Point>& centers,
                                     const BallFamily& family) {
    coverage::mark("tent_to_strip_bound");
    const double rb = std::sqrt(strip.b);
    require(rb <= 0.5 * u.grid().half_extent() * (1.0 + 1e-12), ErrorKind::DomainTooSmall,
            "sqrt(b) exceeds half the grid extent");
    require(!centers.empty(), ErrorKind::Argument, "no centers for the strip bound");
    std::vector<double> F(centers.size());
    parallel_for(centers.size(), [&](std::size_t i) { F[i] = integrate_strip_L2(u, strip, rb, centers[i]); });
    StripBoundReport rep;
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (F[i] > rep.sup_F) {
            rep.sup_F = F[i];
            rep.argmax = centers[i];
        }
    }
    rep.tent_norm = tent_norm(u, family).value;
    if (rep.tent_norm > 0.0) {
        rep.ratio = rep.sup_F / rep.tent_norm;
    } else {
        require(rep.sup_F == 0.0, ErrorKind::InvariantViolation, "zero tent norm with nonzero strip integral");
    }
    return rep;
}

// ------------------------------------------------------------ Caccioppoli

namespace {

double region_integral(const SpatialGrid& grid, std::span<const double> values, const CylinderRegion& r) {
    return r.inner_radius > 0.0 ? integrate_annulus(grid, values, r.center, r.inner_radius, r.outer_radius)
                                : integrate_ball(grid, values, r.center, r.outer_radius);
}

}  // namespace

double caccioppoli_ratio(const SpaceTimeField& u, const CylinderRegion& inner, const CylinderRegion& enlarged) {
    coverage::mark("caccioppoli_ratio");
    require(inner.t_lo < inner.t_hi && enlarged.t_lo < enlarged.t_hi, ErrorKind::Degenerate, "empty time interval");
    require(enlarged.t_lo < inner.t_lo && enlarged.t_hi >= inner.t_hi, ErrorKind::Degenerate,
            "enlarged time interval must start earlier and cover the inner one");
    require(inner.center == enlarged.center, ErrorKind::Degenerate, "regions must share a center");
    require(inner.outer_radius > inner.inner_radius && enlarged.outer_radius > inner.outer_radius, ErrorKind::Degenerate,
            "enlarged set must strictly contain the inner set");
    double margin = enlarged.outer_radius - inner.outer_radius;
    if (inner.inner_radius > 0.0) {
        require(enlarged.inner_radius < inner.inner_radius, ErrorKind::Degenerate,
                "enlarged annulus must reach inside the inner annulus");
        margin = std::min(margin, inner.inner_radius - enlarged.inner_radius);
    } else {
        require(enlarged.inner_radius == 0.0, ErrorKind::Degenerate, "a ball can only be enlarged to a ball");
    }

    const auto& times = u.times();
    const SpatialGrid& grid = u.grid();
    std::vector<double> grad_sq(times.size()), val_sq(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        const auto s = u.slice(i);
        const auto g = gradient(grid, s);
        Samples a(grid.size(), 0.0), b(grid.size());
        for (const auto& comp : g) {
            for (std::size_t k = 0; k < a.size(); ++k) a[k] += comp[k] * comp[k];
        }
        for (std::size_t k = 0; k < b.size(); ++k) b[k] = s[k] * s[k];
        grad_sq[i] = region_integral(grid, a, inner);
        val_sq[i] = region_integral(grid, b, enlarged);
    });
    const double num = trapezoid_on(times, grad_sq, inner.t_lo, inner.t_hi);
    const double den = trapezoid_on(times, val_sq, enlarged.t_lo, enlarged.t_hi) *
                       (1.0 / (margin * margin) + 1.0 / (inner.t_lo - enlarged.t_lo));
    if (num == 0.0) return 0.0;
    require(den > 0.0, ErrorKind::Degenerate, "enlarged energy vanishes while the gradient does not");
    return num / den;
}

// ------------------------------------------------------------ NormReport

void write_norm_report(std::ostream& os, const std::vector<NormReportRow>& rows) {
    os << "quantity,value,family_spec,refinement_level,stability_pct\n";
    char buf[64];
    for (const auto& r : rows) {
        os << r.quantity << ',';
        std::snprintf(buf, sizeof buf, "%.17g", r.value);
        os << buf << ',' << r.family_spec << ',' << r.refinement_level << ',';
        std::snprintf(buf, sizeof buf, "%.17g", r.stability_pct);
        os << buf << '\n';
    }
}

double stability_pct(double coarse, double fine) {
    if (coarse == 0.0 && fine == 0.0) return 0.0;
    return 100.0 * std::abs(fine - coarse) / std::max(std::abs(fine), std::abs(coarse));
}

}  // namespace caloric
