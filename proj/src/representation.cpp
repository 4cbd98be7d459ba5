#include "caloric/representation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "caloric/coverage.hpp"
#include "caloric/error.hpp"
#include "caloric/numeric.hpp"

namespace caloric {

namespace {

Samples product(std::span<const double> a, std::span<const double> b) {
    Samples out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
    return out;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

// ------------------------------------------------------------- ladder

SnapshotLadder::SnapshotLadder(double t0_, double q_, int K_) : t0(t0_), q(q_), K(K_) {
    require(t0 > 0.0, ErrorKind::Argument, "ladder needs t0 > 0");
    require(q > 0.0 && q < 1.0, ErrorKind::Argument, "ladder ratio q must lie in (0, 1)");
    require(K >= 1, ErrorKind::Argument, "ladder needs K >= 1");
}

SnapshotLadder SnapshotLadder::down_to_resolution(double t0, double q, const SpatialGrid& grid, int K_max) {
    const double floor = grid.spacing() * grid.spacing();
    require(t0 >= floor, ErrorKind::InsufficientResolution, "ladder start is below the resolution floor dx^2");
    int K = 0;
    double t = t0;
    while (K < K_max && t * q >= floor) {
        t *= q;
        ++K;
    }
    require(K >= 1, ErrorKind::InsufficientResolution, "no room for a ladder above dx^2");
    return SnapshotLadder(t0, q, K);
}

std::vector<double> SnapshotLadder::times() const {
    std::vector<double> t(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) t[k] = t0 * std::pow(q, k);
    return t;
}

void SnapshotLadder::check_resolution(const SpatialGrid& grid) const {
    const double last = t0 * std::pow(q, K);
    require(last >= grid.spacing() * grid.spacing() * (1.0 - 1e-12), ErrorKind::InsufficientResolution,
            "ladder reaches t = " + num(last) + " below the resolution floor dx^2 = " +
                num(grid.spacing() * grid.spacing()));
}

// ------------------------------------------------------------- sources

VectorSamples SnapshotSource::grad_at(double t) const {
    if (gradient) return gradient(t);
    const Samples v = values(t);
    return caloric::gradient(grid, v);
}

SnapshotSource SnapshotSource::from_solution(const AnalyticSolution& sol, const SpatialGrid& grid) {
    require(sol.dim() == grid.dim(), ErrorKind::Argument, "solution and grid dimensions differ");
    SnapshotSource s{sol.id(), grid, {}, {}, {}, {}};
    s.values = [sol, grid](double t) {
        sol.check_time(t);
        return sample(grid, [&](const Point& x) { return sol.value(t, x); });
    };
    s.gradient = [sol, grid](double t) {
        sol.check_time(t);
        VectorSamples g(static_cast<std::size_t>(grid.dim()), Samples(grid.size()));
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const Point d = sol.gradient(t, grid.point(k));
            for (int a = 0; a < grid.dim(); ++a) g[a][k] = d[a];
        }
        return g;
    };
    if (sol.kind() == SolutionKind::tychonoff) {
        s.truncated = [sol, grid](double t, double radius) {
            for (std::size_t j = 0; j < grid.points_per_axis(); ++j) {
                const double x = grid.coordinate(j);
                if (std::abs(x) <= radius && sol.series()->evaluate(t, x).truncated) return true;
            }
            return false;
        };
    }
    s.exact_trace_pairing = [sol](const SchwartzProbe& phi) { return sol.exact_pairing(0.0, phi); };
    return s;
}

SnapshotSource SnapshotSource::from_datum(const InitialDatum& datum, const SpatialGrid& grid) {
    require(datum.dim() == grid.dim(), ErrorKind::Argument, "datum and grid dimensions differ");
    SnapshotSource s{"heat(" + datum.id() + ")", grid, {}, {}, {}, {}};
    s.values = [datum, grid](double t) { return sample(grid, [&](const Point& x) { return datum.evolved(t, x); }); };
    s.exact_trace_pairing = [datum](const SchwartzProbe& phi) { return std::optional<double>(datum.pairing(phi)); };
    return s;
}

SnapshotSource SnapshotSource::from_datum_numeric(const InitialDatum& datum, const SpatialGrid& grid,
                                                  const HeatOperatorConfig& cfg) {
    require(datum.dim() == grid.dim(), ErrorKind::Argument, "datum and grid dimensions differ");
    SnapshotSource s{"heat_" + to_string(cfg.method) + "(" + datum.id() + ")", grid, {}, {}, {}, {}};
    auto f = std::make_shared<const Samples>(datum.sample(grid));
    s.values = [f, grid, cfg](double t) { return heat_evolve(grid, *f, t, cfg); };
    s.gradient = [f, grid, cfg](double t) { return heat_evolve_gradient(grid, *f, t, cfg); };
    s.exact_trace_pairing = [datum](const SchwartzProbe& phi) { return std::optional<double>(datum.pairing(phi)); };
    return s;
}

SnapshotSource SnapshotSource::from_field(const SpaceTimeField& field) {
    SnapshotSource s{field.label(), field.grid(), {}, {}, {}, {}};
    auto shared = std::make_shared<const SpaceTimeField>(field);
    s.values = [shared](double t) {
        const auto sl = shared->slice(shared->time_index(t));
        return Samples(sl.begin(), sl.end());
    };
    return s;
}

SnapshotSource SnapshotSource::zero(const SpatialGrid& grid) {
    SnapshotSource s{"zero", grid, {}, {}, {}, {}};
    s.values = [grid](double) { return Samples(grid.size(), 0.0); };
    s.exact_trace_pairing = [](const SchwartzProbe&) { return std::optional<double>(0.0); };
    return s;
}

// ------------------------------------------------------------ homotopy

HomotopyReport homotopy_residual(const SnapshotSource& u, double s, double t, const TestFunction& h,
                                 const HeatOperatorConfig& cfg, int grid_level) {
    coverage::mark("homotopy_residual");
    require(0.0 < s && s < t, ErrorKind::Argument, "homotopy residual needs 0 < s < t");
    const SpatialGrid& grid = u.grid;
    require(h.dim() == grid.dim(), ErrorKind::Argument, "test function and grid dimensions differ");
    const Samples hs = h.sample(grid);
    const Samples ut = u.at(t);
    const Samples us = u.at(s);
    const double lhs = integrate_ball(grid, product(ut, hs), h.center(), h.radius());
    Samples phi = heat_evolve(grid, hs, t - s, cfg);
    // FFT round-off would otherwise be amplified by growing u
    double phi_max = 0.0;
    for (double v : phi) phi_max = std::max(phi_max, std::abs(v));
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * phi_max;
    for (double& v : phi) {
        if (std::abs(v) < noise) v = 0.0;
    }
    const Samples integrand = product(us, phi);

    // The truncated kernel zeroes phi far out; audit against the continuum Gaussian tail of phi.
    const double tau = t - s;
    Samples habs(hs.size());
    for (std::size_t k = 0; k < hs.size(); ++k) habs[k] = std::abs(hs[k]);
    const double mass = integrate_grid(grid, habs) * std::pow(4.0 * std::numbers::pi * tau, -0.5 * grid.dim());
    const double edge = 0.9 * grid.half_extent();
    double tail = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Point x = grid.point(k);
        const double m = grid.dim() == 1 ? std::abs(x[0]) : std::max(std::abs(x[0]), std::abs(x[1]));
        if (m < edge) continue;
        const double dx0 = x[0] - h.center()[0];
        const double dx1 = grid.dim() == 2 ? x[1] - h.center()[1] : 0.0;
        const double gap = std::max(0.0, std::hypot(dx0, dx1) - h.radius());
        const double bound = mass * std::exp(-gap * gap / (4.0 * tau));
        tail = std::max(tail, std::abs(us[k]) * std::max(std::abs(phi[k]), bound));
    }
    require(std::isfinite(tail) && tail < 1e-10, ErrorKind::DomainTooSmall,
            "homotopy integrand is " + num(tail) + " at |x| >= 0.9L for " + u.label + "; enlarge L");
    const double rhs = integrate_grid(grid, integrand);
    return {u.label, s, t, h.id(), grid_level, lhs, rhs, std::abs(lhs - rhs)};
}

HomotopyReport homotopy_residual(const AnalyticSolution& u, const SpatialGrid& grid, double s, double t,
                                 const TestFunction& h, const HeatOperatorConfig& cfg, int grid_level) {
    return homotopy_residual(SnapshotSource::from_solution(u, grid), s, t, h, cfg, grid_level);
}

std::vector<HomotopyReport> homotopy_levels(const AnalyticSolution& u, const SpatialGrid& coarse, double s, double t,
                                            const TestFunction& h, int levels, const HeatOperatorConfig& cfg) {
    require(levels >= 1, ErrorKind::Argument, "need at least one grid level");
    std::vector<HomotopyReport> out;
    SpatialGrid grid = coarse;
    for (int level = 0; level < levels; ++level) {
        out.push_back(homotopy_residual(u, grid, s, t, h, cfg, level));
        grid = grid.refined(2);
    }
    return out;
}

void write_homotopy_csv(std::ostream& os, const std::vector<HomotopyReport>& rows) {
    os << "solution,s,t,h_id,grid_level,lhs,rhs,residual\n";
    for (const auto& r : rows) {
        os << '"' << r.solution << "\"," << num(r.s) << ',' << num(r.t) << ",\"" << r.h_id << "\"," << r.grid_level
           << ',' << num(r.lhs) << ',' << num(r.rhs) << ',' << num(r.residual) << '\n';
    }
}

// ---------------------------------------------------------------- flux

void FluxConfig::validate() const {
    require(lambda > 0.0 && lambda < 1.0, ErrorKind::Config, "flux lambda must lie in (0, 1)");
    require(kappa > 1.0, ErrorKind::Config, "flux kappa must exceed 1");
    require(c > 0.0 && c < 0.25, ErrorKind::Config, "flux c must lie in (0, 1/4)");
    require(!R_values.empty(), ErrorKind::Config, "flux needs at least one radius");
    for (std::size_t i = 1; i < R_values.size(); ++i) {
        require(R_values[i] > R_values[i - 1], ErrorKind::Config, "flux radii must increase");
    }
    require(time_nodes >= 3, ErrorKind::Config, "flux needs at least 3 time nodes");
}

FluxReport flux_functional(const SnapshotSource& u, double s, double t, const TestFunction& h, const FluxConfig& fcfg,
                           double gamma_ref, const HeatOperatorConfig& cfg) {
    coverage::mark("flux_functional");
    fcfg.validate();
    require(0.0 < s && s < t, ErrorKind::Argument, "flux functional needs 0 < s < t");
    const SpatialGrid& grid = u.grid;
    for (double R : fcfg.R_values) {
        require(fcfg.lambda * R > h.radius() + 2.0 * grid.spacing(), ErrorKind::Argument,
                "annulus at R = " + num(R) + " meets the support of h (need lambda R > rho + 2 dx)");
        require(R <= 0.8 * grid.half_extent() * (1.0 + 1e-12), ErrorKind::DomainTooSmall,
                "flux radius " + num(R) + " exceeds 0.8 L");
    }
    const int n = fcfg.time_nodes;
    const std::size_t nR = fcfg.R_values.size();
    const Samples hs = h.sample(grid);
    std::vector<double> taus(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) taus[i] = s + (t - s) * i / (n - 1);
    std::vector<std::vector<double>> a1(taus.size(), std::vector<double>(nR)), a2 = a1;
    parallel_for(taus.size(), [&](std::size_t i) {
        const double tau = taus[i];
        const Samples uu = u.at(tau);
        const VectorSamples gu = u.grad_at(tau);
        Samples phi;
        VectorSamples gphi;
        if (i + 1 == taus.size()) {
            phi = hs;
            gphi = h.sample_gradient(grid);
        } else {
            phi = heat_evolve(grid, hs, t - tau, cfg);
            gphi = heat_evolve_gradient(grid, hs, t - tau, cfg);
        }
        const Samples mgu = magnitude(gu);
        const Samples mgphi = magnitude(gphi);
        Samples f1(grid.size()), f2(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            f1[k] = std::abs(phi[k]) * mgu[k];
            f2[k] = std::abs(uu[k]) * mgphi[k];
        }
        for (std::size_t r = 0; r < nR; ++r) {
            const double R = fcfg.R_values[r];
            a1[i][r] = integrate_annulus(grid, f1, h.center(), fcfg.lambda * R, R);
            a2[i][r] = integrate_annulus(grid, f2, h.center(), fcfg.lambda * R, R);
        }
    });
    FluxReport rep;
    rep.gamma_ref = gamma_ref;
    rep.threshold = fcfg.admissibility_threshold();
    rep.admissible = gamma_ref < rep.threshold;
    std::vector<double> col1(taus.size()), col2(taus.size());
    for (std::size_t r = 0; r < nR; ++r) {
        for (std::size_t i = 0; i < taus.size(); ++i) {
            col1[i] = a1[i][r];
            col2[i] = a2[i][r];
        }
        rep.rows.push_back({fcfg.R_values[r], trapezoid_on(taus, col1, s, t), trapezoid_on(taus, col2, s, t)});
    }
    std::size_t arg = 0;
    for (std::size_t r = 0; r < nR; ++r) {
        const double v = rep.rows[r].total();
        if (!std::isfinite(v)) rep.finite = false;
        if (v > rep.rows[arg].total()) arg = r;
    }
    rep.max_total = rep.rows[arg].total();
    rep.tail_monotone = rep.finite && (arg + 1 < nR || rep.max_total == 0.0);
    for (std::size_t r = arg + 1; r < nR; ++r) {
        if (rep.rows[r].total() > rep.rows[r - 1].total()) rep.tail_monotone = false;
    }
    return rep;
}

// ------------------------------------------------------------ recovery

namespace {

std::vector<Samples> snapshots(const SnapshotSource& u, const std::vector<double>& times) {
    std::vector<Samples> out(times.size());
    parallel_for(times.size(), [&](std::size_t i) { out[i] = u.at(times[i]); });
    return out;
}

bool grows_three_times(const std::vector<double>& inc, double floor) {
    int run = 0;
    for (std::size_t k = 1; k < inc.size(); ++k) {
        run = (inc[k] > inc[k - 1] && inc[k] > floor) ? run + 1 : 0;
        if (run >= 3) return true;
    }
    return false;
}

// The last `steps` increments of the sequence are each no larger than the one
// before, increments below the round-off floor counting as settled.
bool settles(const std::vector<double>& seq, std::size_t steps) {
    if (seq.size() < 2) return false;
    double scale = 1.0;
    for (double v : seq) {
        if (!std::isfinite(v)) return false;
        scale = std::max(scale, std::abs(v));
    }
    const double floor = 1e-12 * scale;
    std::vector<double> inc;
    for (std::size_t k = 1; k < seq.size(); ++k) inc.push_back(std::abs(seq[k] - seq[k - 1]));
    const std::size_t first = inc.size() > steps ? inc.size() - steps : 1;
    for (std::size_t k = std::max<std::size_t>(first, 1); k < inc.size(); ++k) {
        if (inc[k] > floor && inc[k] > inc[k - 1]) return false;
    }
    return true;
}

}  // namespace

RecoveryReport recover_initial_data(const SnapshotSource& u, const SnapshotLadder& ladder,
                                    const std::vector<SchwartzProbe>& panel) {
    coverage::mark("recover_initial_data");
    require(!panel.empty(), ErrorKind::Argument, "empty probe panel");
    ladder.check_resolution(u.grid);
    const auto times = ladder.times();
    const auto snaps = snapshots(u, times);
    RecoveryReport rep;
    rep.solution = u.label;
    rep.probes.resize(panel.size());
    parallel_for(panel.size(), [&](std::size_t p) {
        const SchwartzProbe& phi = panel[p];
        ProbeRecovery pr;
        pr.probe_id = phi.id();
        pr.times = times;
        const Samples ph = phi.sample(u.grid);
        bool finite = true;
        for (const auto& sn : snaps) {
            pr.pairings.push_back(integrate_grid(u.grid, product(sn, ph)));
            finite = finite && std::isfinite(pr.pairings.back());
        }
        for (std::size_t k = 0; k + 1 < times.size(); ++k) pr.increments.push_back(std::abs(pr.pairings[k + 1] - pr.pairings[k]));
        for (std::size_t k = 0; k < times.size(); ++k) {
            const std::size_t first = k >= 5 ? k - 5 : 0;
            const std::span<const double> ts(times.data() + first, k - first + 1);
            const std::span<const double> ps(pr.pairings.data() + first, k - first + 1);
            pr.running_limits.push_back(extrapolate_to_zero(ts, ps));
        }
        pr.extrapolated = pr.running_limits.back();
        const double floor = 1e-12 * std::max(1.0, std::abs(pr.pairings.front()));
        pr.recoverable = finite && std::isfinite(pr.extrapolated) && !grows_three_times(pr.increments, floor);
        if (u.exact_trace_pairing) {
            pr.exact = u.exact_trace_pairing(phi);
            if (pr.exact) pr.error = std::abs(pr.extrapolated - *pr.exact);
        }
        rep.probes[p] = std::move(pr);
    });
    for (const auto& pr : rep.probes) {
        rep.all_recoverable = rep.all_recoverable && pr.recoverable;
        if (pr.error) rep.max_error = std::max(rep.max_error, *pr.error);
    }
    return rep;
}

void write_recovery_csv(std::ostream& os, const RecoveryReport& report) {
    os << "solution,probe_id,t_k,pairing,increment,extrapolated,exact_if_known,error\n";
    for (const auto& pr : report.probes) {
        for (std::size_t k = 0; k < pr.times.size(); ++k) {
            os << '"' << report.solution << "\",\"" << pr.probe_id << "\"," << num(pr.times[k]) << ','
               << num(pr.pairings[k]) << ',' << (k == 0 ? std::string() : num(pr.increments[k - 1])) << ','
               << num(pr.running_limits[k]) << ',';
            if (pr.exact) {
                os << num(*pr.exact) << ',' << num(std::abs(pr.running_limits[k] - *pr.exact));
            } else {
                os << ',';
            }
            os << '\n';
        }
    }
}

// ---------------------------------------------------------- uniqueness

std::string to_string(UniquenessVerdict v) {
    switch (v) {
        case UniquenessVerdict::consistent: return "CONSISTENT";
        case UniquenessVerdict::violation: return "VIOLATION";
        case UniquenessVerdict::hypothesis_not_met: return "HYPOTHESIS-NOT-MET";
        case UniquenessVerdict::not_applicable: return "NOT-APPLICABLE";
    }
    return "NOT-APPLICABLE";
}

UniquenessReport uniqueness_probe(const SnapshotSource& u, const SnapshotLadder& ladder,
                                  const std::vector<SchwartzProbe>& panel, const GrowthFit& growth, double tolerance) {
    coverage::mark("uniqueness_probe");
    UniquenessReport rep{UniquenessVerdict::not_applicable, 0.0, 0.0, growth.verdict};
    if (growth.verdict != GrowthVerdict::pass) return rep;
    const auto rec = recover_initial_data(u, ladder, panel);
    bool vanish = rec.all_recoverable;
    for (const auto& pr : rec.probes) {
        rep.max_limit = std::max(rep.max_limit, std::abs(pr.extrapolated));
        vanish = vanish && std::abs(pr.extrapolated) <= tolerance;
    }
    if (!vanish) {
        rep.verdict = UniquenessVerdict::hypothesis_not_met;
        return rep;
    }
    const double R = 0.5 * u.grid.half_extent();
    for (double t : ladder.times()) {
        const Samples v = u.at(t);
        rep.max_slice_norm = std::max(rep.max_slice_norm, std::sqrt(integrate_ball(u.grid, product(v, v), {0.0, 0.0}, R)));
    }
    rep.verdict = rep.max_slice_norm <= tolerance ? UniquenessVerdict::consistent : UniquenessVerdict::violation;
    return rep;
}

// ---------------------------------------------------- convergence mode

ConvergenceModeReport convergence_mode_probe(const SnapshotSource& u, const SnapshotLadder& ladder,
                                             const std::vector<TestFunction>& compact_panel,
                                             const std::vector<SchwartzProbe>& schwartz_panel,
                                             const std::vector<double>& rho, double t_fixed) {
    coverage::mark("convergence_mode_probe");
    ladder.check_resolution(u.grid);
    ConvergenceModeReport rep;
    rep.solution = u.label;
    rep.times = ladder.times();
    rep.t_fixed = t_fixed;
    const auto snaps = snapshots(u, rep.times);
    rep.compact.resize(compact_panel.size());
    parallel_for(compact_panel.size(), [&](std::size_t i) {
        const TestFunction& h = compact_panel[i];
        CompactTrack tr;
        tr.id = h.id();
        const Samples hs = h.sample(u.grid);
        for (const auto& sn : snaps) tr.pairings.push_back(integrate_ball(u.grid, product(sn, hs), h.center(), h.radius()));
        // first index after which every pairing stays below 1e-8
        std::size_t enter = tr.pairings.size();
        for (std::size_t k = tr.pairings.size(); k-- > 0;) {
            if (!(std::abs(tr.pairings[k]) < 1e-8)) break;
            enter = k;
        }
        tr.vanishes = enter < tr.pairings.size() && std::abs(tr.pairings.back()) <= std::abs(tr.pairings[enter]);
        tr.converges = settles(tr.pairings, 3);
        rep.compact[i] = std::move(tr);
    });

    const Samples v = u.at(t_fixed);
    for (const auto& phi : schwartz_panel) {
        SchwartzTrack tr;
        tr.id = phi.id();
        tr.rho = rho;
        const Samples prod = product(v, phi.sample(u.grid));
        for (double r : rho) {
            tr.partials.push_back(integrate_ball(u.grid, prod, {0.0, 0.0}, r));
            tr.truncated.push_back(u.truncated ? u.truncated(t_fixed, r) : false);
        }
        tr.diverges = tr.partials.size() >= 2 && std::abs(tr.partials.front()) > 0.0;
        for (std::size_t m = 1; m < tr.partials.size(); ++m) {
            if (!(std::abs(tr.partials[m]) >= 10.0 * std::abs(tr.partials[m - 1]))) tr.diverges = false;
        }
        tr.converges = settles(tr.partials, tr.partials.size() - 1);
        rep.schwartz.push_back(std::move(tr));
    }
    rep.compact_vanish = !rep.compact.empty();
    for (const auto& c : rep.compact) rep.compact_vanish = rep.compact_vanish && c.vanishes;
    for (const auto& s : rep.schwartz) rep.schwartz_diverge = rep.schwartz_diverge || s.diverges;
    return rep;
}

// ------------------------------------------------------- pairing bound

PairingBoundReport pairing_bound_check(const SpaceTimeField& u, const TestFunction& phi, const BallFamily& family) {
    coverage::mark("pairing_bound_check");
    const SpatialGrid& grid = u.grid();
    require(phi.dim() == grid.dim(), ErrorKind::Argument, "test function and field dimensions differ");
    PairingBoundReport rep;
    rep.order = grid.dim() + 3;
    rep.seminorm = schwartz_seminorm(phi, SeminormOrder(rep.order));
    rep.tent_norm = tent_norm(u, family).value;
    const Samples ph = phi.sample(grid);
    bool any = false;
    for (std::size_t i = 0; i < u.time_count(); ++i) {
        if (u.times()[i] >= 0.5) break;
        any = true;
        const double p = integrate_ball(grid, product(u.slice(i), ph), phi.center(), phi.radius());
        rep.sup_pairing = std::max(rep.sup_pairing, std::abs(p));
    }
    require(any, ErrorKind::Coverage, "no field samples in (0, 1/2)");
    if (rep.tent_norm == 0.0) {
        require(rep.sup_pairing == 0.0, ErrorKind::InvariantViolation,
                "nonzero pairing with zero tent norm (quadrature inconsistency)");
        return rep;
    }
    rep.ratio = rep.sup_pairing / (rep.seminorm * rep.tent_norm);
    return rep;
}

// ------------------------------------------------- snapshot boundedness

BoundednessReport snapshot_boundedness_probe(const SnapshotSource& u, const SnapshotLadder& ladder,
                                             const std::vector<SchwartzProbe>& panel, double growth_limit) {
    coverage::mark("snapshot_boundedness_probe");
    ladder.check_resolution(u.grid);
    const auto times = ladder.times();
    const auto snaps = snapshots(u, times);
    const std::size_t half = (times.size() + 1) / 2;
    BoundednessReport rep;
    rep.growth_limit = growth_limit;
    rep.bounded = true;
    for (const auto& phi : panel) {
        const Samples ph = phi.sample(u.grid);
        double early = 0.0, late = 0.0;
        bool finite = true;
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double p = std::abs(integrate_grid(u.grid, product(snaps[k], ph)));
            finite = finite && std::isfinite(p);
            (k < half ? early : late) = std::max(k < half ? early : late, p);
        }
        rep.probe_ids.push_back(phi.id());
        rep.early_sup.push_back(early);
        rep.late_sup.push_back(late);
        rep.bounded = rep.bounded && finite && late <= growth_limit * std::max(early, 1e-12);
    }
    return rep;
}

}  // namespace caloric
