#include "caloric/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "caloric/caloric_zoo.hpp"
#include "caloric/coverage.hpp"
#include "caloric/error.hpp"
#include "caloric/experiment.hpp"
#include "caloric/norms.hpp"
#include "caloric/numeric.hpp"
#include "caloric/representation.hpp"

namespace caloric {

namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;
const HeatOperatorConfig kKernel{};
const HeatOperatorConfig kSpectral{HeatMethod::spectral_multiplier, 10.0, true};

std::string g3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

double max_abs_diff(const Samples& a, const Samples& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

double sum_abs(const SpatialGrid& g, const Samples& f) {
    Samples a(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) a[k] = std::abs(f[k]);
    return integrate_grid(g, a);
}

SpaceTimeField field_from(const SnapshotSource& u, const std::vector<double>& times) {
    std::vector<double> values;
    for (double t : times) {
        const Samples s = u.at(t);
        values.insert(values.end(), s.begin(), s.end());
    }
    return SpaceTimeField(u.grid, times, std::move(values), u.label);
}

// Simpson oracle for the tent norm of the heat kernel on centred balls:
// sqrt((1/2)(8 pi)^{-1/2} int_0^1 2 erf(1/(sqrt(2) v)) dv).
double heat_kernel_tent_oracle() {
    const int n = 20000;
    auto f = [](double v) { return v == 0.0 ? 2.0 : 2.0 * std::erf(1.0 / (std::sqrt(2.0) * v)); };
    double s = 0.0;
    for (int i = 0; i <= n; ++i) s += (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2)) * f(double(i) / n);
    s /= 3.0 * n;
    return std::sqrt(0.5 / std::sqrt(8.0 * pi) * s);
}

std::vector<AnalyticSolution> tempered_zoo() {
    return {AnalyticSolution::gaussian_kernel(1, 1.0), AnalyticSolution::caloric_polynomial(1, 2),
            AnalyticSolution::caloric_polynomial(1, 4), AnalyticSolution::exponential(1, {1.0, 0.0}),
            AnalyticSolution::eigenmode(1, {1.0, 0.0})};
}

// ------------------------------------------------------------ criteria

CriterionResult semigroup_laws() {
    CriterionResult r{1, "semigroup laws", false, {}, 0.0};
    std::ostringstream detail;
    bool ok = true;
    const SpatialGrid gp(1, 12.0, 0.05, BoundaryMode::periodic);
    const std::vector<InitialDatum> data{InitialDatum::schwartz(SchwartzProbe::hermite(1, 2, 1.0)),
                                         InitialDatum::sign(1), InitialDatum::dirac(1),
                                         InitialDatum::oscillator(1, pi / 2, 1.0)};
    double comp = 0.0, mass = 0.0, maxp = 0.0, contr = 0.0;
    for (const auto& cfg : {kKernel, kSpectral}) {
        for (const auto& d : data) {
            const Samples f = d.sample(gp);
            const double finf = *std::max_element(f.begin(), f.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
            const double fmax = *std::max_element(f.begin(), f.end());
            const double fmin = *std::min_element(f.begin(), f.end());
            const Samples u1 = heat_evolve(gp, f, 0.1, cfg);
            const Samples u12 = heat_evolve(gp, u1, 0.2, cfg);
            const Samples u3 = heat_evolve(gp, f, 0.3, cfg);
            comp = std::max(comp, max_abs_diff(u12, u3) / std::abs(finf));
            const double l1 = sum_abs(gp, f);
            mass = std::max(mass, std::abs(integrate_grid(gp, u3) - integrate_grid(gp, f)) / l1);
            for (double v : u3) maxp = std::max({maxp, (v - fmax) / std::abs(finf), (fmin - v) / std::abs(finf)});
            contr = std::max(contr, grid_l2_norm(gp, u3) / grid_l2_norm(gp, f) - 1.0);
        }
    }
    // zoo solutions: e^{t Laplacian} u(s) = u(s + t)
    const SpatialGrid gz(1, 20.0, 0.05, BoundaryMode::zero_padded);
    const SpatialGrid gzp(1, 20.0, 0.05, BoundaryMode::periodic);
    double zoo = 0.0;
    for (const auto& sol : {AnalyticSolution::gaussian_kernel(1, 0.5), AnalyticSolution::erf_front(1)}) {
        const Samples a = sample(gz, [&](const Point& x) { return eval_solution(sol, 0.5, x); });
        const Samples b = sample(gz, [&](const Point& x) { return eval_solution(sol, 1.5, x); });
        Samples e = heat_evolve(gz, a, 1.0, kKernel);
        double m = 0.0;
        for (std::size_t k = 0; k < gz.size(); ++k) {
            if (std::abs(gz.coordinate(k)) <= 10.0) m = std::max(m, std::abs(e[k] - b[k]));
        }
        zoo = std::max(zoo, m);
    }
    const Samples ga = sample(gzp, [](const Point& x) { return std::exp(-x[0] * x[0] / 2.0) / std::sqrt(2.0 * pi); });
    const Samples gb = sample(gzp, [](const Point& x) { return std::exp(-x[0] * x[0] / 6.0) / std::sqrt(6.0 * pi); });
    zoo = std::max(zoo, max_abs_diff(heat_evolve(gzp, ga, 1.0, kSpectral), gb));
    // eigenmode decay, spectral
    const SpatialGrid ge(1, pi, 2.0 * pi / 64, BoundaryMode::periodic);
    double eig = 0.0;
    for (double w : {1.0, 3.0}) {
        const Samples f = sample(ge, [w](const Point& x) { return std::sin(w * x[0]); });
        const Samples u = heat_evolve(ge, f, 0.7, kSpectral);
        for (std::size_t k = 0; k < ge.size(); ++k) {
            eig = std::max(eig, std::abs(u[k] - std::exp(-w * w * 0.7) * std::sin(w * ge.coordinate(k))));
        }
    }
    ok = comp <= 1e-6 && zoo <= 1e-6 && mass <= 1e-10 && maxp <= 1e-10 && contr <= 1e-10 && eig <= 1e-8;
    detail << "composition " << g3(comp) << ", zoo evolution " << g3(zoo) << ", mass " << g3(mass)
           << ", max principle excess " << g3(maxp) << ", L2 growth " << g3(contr) << ", eigenmode " << g3(eig);
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

CriterionResult homotopy_identity(const fs::path& dir) {
    CriterionResult r{2, "homotopy identity", false, {}, 0.0};
    const TestFunction h(1, {0.0, 0.0}, 1.0);
    std::vector<HomotopyReport> all;
    bool ok = true;
    std::ostringstream detail;
    double worst_res = 0.0;
    std::string first_bad;
    for (const auto& method : {kKernel, kSpectral}) {
        const BoundaryMode mode = method.method == HeatMethod::spectral_multiplier ? BoundaryMode::periodic
                                                                                   : BoundaryMode::zero_padded;
        const SpatialGrid coarse(1, 20.0, 0.1, mode);
        for (const auto& u : tempered_zoo()) {
            ProbeRegion region{0.5, 1.0, -2.0, 2.0};
            region.order = 4;
            region.step = 1e-2;
            if (heat_residual(u, region) > 1e-6) ok = false;
            const auto rows = homotopy_levels(u, coarse, 0.5, 1.0, h, 3, method);
            all.insert(all.end(), rows.begin(), rows.end());
            bool rate = true;
            for (std::size_t i = 1; i < rows.size(); ++i) rate = rate && rows[i].residual * 3.0 <= rows[i - 1].residual;
            worst_res = std::max(worst_res, rows.back().residual);
            if (!(rate && rows.back().residual <= 1e-5)) {
                ok = false;
                if (first_bad.empty()) {
                    first_bad = u.id() + "/" + to_string(method.method) + " residuals " + g3(rows[0].residual) + ", " +
                                g3(rows[1].residual) + ", " + g3(rows[2].residual);
                }
            }
        }
    }
    std::ofstream os(dir / "homotopy.csv");
    write_homotopy_csv(os, all);
    detail << "finest residual max " << g3(worst_res);
    if (!first_bad.empty()) detail << "; no 3x decrease per halving, e.g. " << first_bad;
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

CriterionResult size_condition(const fs::path& dir) {
    CriterionResult r{3, "size condition", false, {}, 0.0};
    const StripSpec strip(0.1, 0.3);
    const auto times = linspace(0.1, 0.3, 41);
    const SpatialGrid g(1, 10.0, 0.05, BoundaryMode::zero_padded);
    const auto radii = linspace(0.5, 6.0, 12);
    std::ostringstream detail;
    bool ok = true;
    for (const auto& u : {AnalyticSolution::gaussian_kernel(1, 1.0), AnalyticSolution::eigenmode(1, {1.0, 0.0}),
                          AnalyticSolution::erf_front(1)}) {
        const GrowthFit f = strip_growth_fit(sample_field(u, g, times), strip, radii);
        ok = ok && f.gamma_hat < 0.01;
        detail << u.id() << " " << g3(f.gamma_hat) << "; ";
    }
    const SpatialGrid gx(1, 12.0, 0.05, BoundaryMode::zero_padded);
    const auto ex = sample_field(AnalyticSolution::exponential(1, {1.0, 0.0}), gx, times);
    std::vector<double> gammas;
    for (double Rmax : {3.0, 6.0, 9.0}) gammas.push_back(strip_growth_fit(ex, strip, linspace(0.5, Rmax, 12)).gamma_hat);
    ok = ok && gammas[1] < gammas[0] && gammas[2] < gammas[1];
    detail << "exponential " << g3(gammas[0]) << " > " << g3(gammas[1]) << " > " << g3(gammas[2]) << "; ";
    const auto ty = AnalyticSolution::tychonoff(1);
    (void)tychonoff_eval(0.2, 1.0);
    const GrowthFit ft = strip_growth_fit(sample_field(ty, g, times), strip, radii);
    ok = ok && ft.gamma_hat >= 0.25 && ft.verdict == GrowthVerdict::fail && ft.r2_of_fit >= 0.9;
    detail << "tychonoff " << g3(ft.gamma_hat) << " " << to_string(ft.verdict) << " r2 " << g3(ft.r2_of_fit);
    std::ofstream os(dir / "growth_fit.csv");
    os.precision(17);
    os << "R,x,l2,log_l2,gamma_hat,logC_hat,r2,used_in_fit\n";
    for (std::size_t i = 0; i < ft.radii.size(); ++i) {
        const double R = ft.radii[i];
        os << R << ',' << R * R / (strip.b - strip.a) << ',' << ft.l2_values[i] << ',' << std::log(ft.l2_values[i]) << ','
           << ft.gamma_hat << ',' << ft.logC_hat << ',' << ft.r2_of_fit << ',' << (i >= ft.fit_start) << '\n';
    }
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

CriterionResult representation_closure(const fs::path& dir) {
    CriterionResult r{4, "representation closure", false, {}, 0.0};
    const SpatialGrid g(1, 16.0, 0.02, BoundaryMode::zero_padded);
    const auto panel = default_schwartz_panel(1);
    double err = 0.0, spread = 0.0;
    bool recoverable = true;
    RecoveryReport keep;
    for (const auto& d : {InitialDatum::schwartz(SchwartzProbe::hermite(1, 2, 1.0)), InitialDatum::sign(1),
                          InitialDatum::dirac(1), InitialDatum::oscillator(1, pi / 2, 1.0)}) {
        const auto src = SnapshotSource::from_datum(d, g);
        const auto a = recover_initial_data(src, SnapshotLadder::down_to_resolution(0.5, 0.5, g), panel);
        const auto b = recover_initial_data(src, SnapshotLadder::down_to_resolution(0.5, 0.7, g), panel);
        recoverable = recoverable && a.all_recoverable && b.all_recoverable;
        err = std::max({err, a.max_error, b.max_error});
        for (std::size_t p = 0; p < panel.size(); ++p) {
            spread = std::max(spread, std::abs(a.probes[p].extrapolated - b.probes[p].extrapolated));
        }
        if (d.kind() == DatumKind::sign_function) keep = a;
    }
    std::ofstream os(dir / "recovery.csv");
    write_recovery_csv(os, keep);
    r.pass = recoverable && err <= 1e-4 && spread <= 1e-8;
    r.detail = "max error " + g3(err) + ", q-spread " + g3(spread) + (recoverable ? "" : ", NOT-RECOVERABLE probe");
    return r;
}

CriterionResult counterexample() {
    CriterionResult r{5, "counterexample", false, {}, 0.0};
    const SpatialGrid g(1, 10.0, 0.02, BoundaryMode::zero_padded);
    const auto ty = AnalyticSolution::tychonoff(1);
    const auto u = SnapshotSource::from_solution(ty, g);
    const auto ladder = SnapshotLadder::down_to_resolution(0.2, 0.5, g);
    const SchwartzProbe gauss(1, {{1.0}}, 1.0);
    const auto rep = convergence_mode_probe(u, ladder, default_compact_panel(1), {gauss}, {2.0, 4.0, 6.0, 8.0}, 0.1);
    const auto& s = rep.schwartz[0];
    double min_ratio = 1e300;
    for (std::size_t m = 1; m < s.partials.size(); ++m) min_ratio = std::min(min_ratio, std::abs(s.partials[m] / s.partials[m - 1]));
    double last = 0.0;
    for (const auto& c : rep.compact) last = std::max(last, std::abs(c.pairings.back()));
    const StripSpec strip(0.1, 0.3);
    const GrowthFit fit = strip_growth_fit(sample_field(ty, g, linspace(0.1, 0.3, 21)), strip, linspace(0.5, 6.0, 12));
    const auto uq = uniqueness_probe(u, ladder, default_schwartz_panel(1), fit);
    int truncated = 0;
    for (bool t : s.truncated) truncated += t;
    r.pass = rep.compact_vanish && s.diverges;
    r.detail = "compact |pairing| at t_K " + g3(last) + ", min partial growth " + g3(min_ratio) + "x, " +
               std::to_string(truncated) + " truncation-limited rho, uniqueness " + to_string(uq.verdict);
    return r;
}

CriterionResult annulus_decay() {
    CriterionResult r{6, "annulus decay", false, {}, 0.0};
    const SpatialGrid g(1, 12.0, 0.01, BoundaryMode::periodic);
    const TestFunction h(1, {0.0, 0.0}, 1.0);
    const AnnulusScheme scheme(1.0, 1.3, 6);
    const auto a = annulus_decay_check(h, 0.1, scheme, g, kSpectral);
    const auto b = annulus_decay_check(h, 0.2, scheme, g, kSpectral);
    const double c = a.fitted_c;
    const double drift = std::abs(b.fitted_c - c) / c;
    r.pass = c > 0.20 && c <= 0.25 && drift <= 0.1 && a.contraction_ok;
    r.detail = "c " + g3(c) + " at t = 0.1, " + g3(b.fitted_c) + " at t = 0.2 (drift " + g3(100 * drift) + "%)";
    return r;
}

CriterionResult flux_boundedness() {
    CriterionResult r{7, "flux boundedness", false, {}, 0.0};
    const SpatialGrid g(1, 16.0, 0.05, BoundaryMode::zero_padded);
    const TestFunction h(1, {0.0, 0.0}, 1.0);
    FluxConfig fc;
    fc.R_values = {2.0, 4.0, 6.0, 8.0, 10.0, 12.0};
    const StripSpec strip(0.5, 1.0);
    const auto times = linspace(0.5, 1.0, 21);
    bool ok = true;
    int admissible = 0;
    double phi8 = 1.0;
    std::ostringstream detail;
    for (const auto& u : {AnalyticSolution::gaussian_kernel(1, 1.0), AnalyticSolution::eigenmode(1, {1.0, 0.0}),
                          AnalyticSolution::erf_front(1), AnalyticSolution::exponential(1, {1.0, 0.0}),
                          AnalyticSolution::caloric_polynomial(1, 2)}) {
        const double gamma = strip_growth_fit(sample_field(u, g, times), strip, linspace(1.0, 12.0, 12)).gamma_hat;
        const auto rep = flux_functional(SnapshotSource::from_solution(u, g), 0.5, 1.0, h, fc, gamma);
        if (!rep.admissible) {
            detail << u.id() << " inadmissible; ";
            continue;
        }
        ++admissible;
        ok = ok && rep.finite && rep.tail_monotone;
        if (u.kind() == SolutionKind::gaussian_kernel) phi8 = rep.rows[3].total();
        detail << u.id() << " max " << g3(rep.max_total) << (rep.tail_monotone ? "" : " (tail not monotone)") << "; ";
    }
    // a datum source exercises the finite-difference gradient path
    const auto ds = flux_functional(SnapshotSource::from_datum(InitialDatum::sign(1), g), 0.5, 1.0, h, fc, 0.0);
    ok = ok && ds.finite;
    r.pass = ok && admissible >= 1 && phi8 <= 1e-8;
    detail << "gaussian Phi(8) " << g3(phi8);
    r.detail = detail.str();
    return r;
}

CriterionResult tent_and_bmo() {
    CriterionResult r{8, "tent and bmo^-1", false, {}, 0.0};
    std::ostringstream detail;
    bool ok = true;
    // heat kernel tent norm against the erf-integral oracle
    const SpatialGrid g(1, 8.0, 0.02, BoundaryMode::zero_padded);
    const BallFamily centred{{{0.0, 0.0}}, {0.5, 1.0, 1.5, 2.0}};
    const auto phi = sample_field(AnalyticSolution::gaussian_kernel(1, 0.0), g, tent_ladder(g, centred));
    const double oracle = heat_kernel_tent_oracle();
    const double tn = tent_norm(phi, centred).value;
    const bool tent_ok = std::abs(tn - oracle) <= 0.05 * oracle;
    ok = ok && tent_ok;
    detail << "tent(Phi) " << g3(tn) << " vs " << g3(oracle) << "; ";

    // pairing bound ratios on the T-infinity corpus, two grid levels
    const BallFamily fam = BallFamily::lattice(1, 2.0, 1.0, {0.5, 1.0});
    const TestFunction probe(1, {0.5, 0.0}, 1.0);
    const InitialDatum osc = InitialDatum::oscillator(1, 2.0, 1.0);
    const std::vector<std::function<SnapshotSource(const SpatialGrid&)>> corpus{
        [](const SpatialGrid& gg) { return SnapshotSource::from_datum(InitialDatum::sign(1), gg); },
        [osc](const SpatialGrid& gg) { return SnapshotSource::from_datum(osc, gg); },
        [](const SpatialGrid& gg) { return SnapshotSource::from_solution(AnalyticSolution::gaussian_kernel(1, 0.0), gg); }};
    double worst_drift = 0.0, worst_ratio = 0.0;
    for (const auto& make : corpus) {
        double ratios[2];
        for (int level = 0; level < 2; ++level) {
            const SpatialGrid gg(1, 12.0, level ? 0.02 : 0.04, BoundaryMode::zero_padded);
            ratios[level] = pairing_bound_check(field_from(make(gg), tent_ladder(gg, fam)), probe, fam).ratio;
        }
        const double drift = std::abs(ratios[1] - ratios[0]) / ratios[1];
        ok = ok && std::isfinite(ratios[1]) && drift <= 0.05;
        worst_drift = std::max(worst_drift, drift);
        worst_ratio = std::max(worst_ratio, ratios[1]);
    }
    detail << "pairing ratio max " << g3(worst_ratio) << " drift " << g3(100 * worst_drift) << "%; ";

    // composite: e^{t Laplacian} of a bmo^-1 oscillator
    const SpatialGrid gc(1, 20.0, 0.02, BoundaryMode::zero_padded);
    const auto u = SnapshotSource::from_datum(osc, gc);
    const StripSpec strip(0.1, 0.3);
    const auto strip_field = field_from(u, linspace(0.1, 0.3, 21));
    const GrowthFit fit = strip_growth_fit(strip_field, strip, linspace(0.5, 6.0, 12));
    const auto ladder = SnapshotLadder::down_to_resolution(0.5, 0.5, gc);
    const auto bounded = snapshot_boundedness_probe(u, ladder, default_schwartz_panel(1));
    const auto rec = recover_initial_data(u, ladder, default_schwartz_panel(1));
    const double bmo = bmo_inv_norm(gc, osc, fam, kKernel).value;
    const auto strip_bound = tent_to_strip_bound(field_from(u, tent_ladder(gc, fam)), StripSpec(0.01, 0.25),
                                                 {{0.0, 0.0}, {1.0, 0.0}}, fam);
    const bool composite = fit.verdict == GrowthVerdict::pass && bounded.bounded && rec.all_recoverable &&
                           rec.max_error <= 1e-3 && std::isfinite(bmo) && std::isfinite(strip_bound.ratio);
    ok = ok && composite;
    detail << "oscillator (i) " << to_string(fit.verdict) << " (ii) " << (bounded.bounded ? "PASS" : "FAIL")
           << " recovery error " << g3(rec.max_error) << " bmo^-1 " << g3(bmo);
    r.pass = ok;
    r.detail = detail.str();
    return r;
}

CriterionResult caccioppoli() {
    CriterionResult r{9, "Caccioppoli", false, {}, 0.0};
    const auto times = linspace(0.5, 2.0, 151);
    const CylinderRegion inner{1.0, 2.0, {0.0, 0.0}, 0.0, 1.0};
    const CylinderRegion outer{0.5, 2.0, {0.0, 0.0}, 0.0, 2.0};
    bool ok = true;
    double worst = 0.0, largest = 0.0;
    for (const auto& u : {AnalyticSolution::eigenmode(1, {1.0, 0.0}), AnalyticSolution::gaussian_kernel(1, 1.0),
                          AnalyticSolution::erf_front(1), AnalyticSolution::exponential(1, {1.0, 0.0}),
                          AnalyticSolution::caloric_polynomial(1, 2)}) {
        double ratio[2];
        for (int level = 0; level < 2; ++level) {
            const SpatialGrid g(1, 6.0, level ? 0.01 : 0.02, BoundaryMode::zero_padded);
            ratio[level] = caccioppoli_ratio(sample_field(u, g, times), inner, outer);
        }
        const double drift = std::abs(ratio[1] - ratio[0]) / std::max(ratio[1], 1e-300);
        ok = ok && std::isfinite(ratio[1]) && drift <= 0.1;
        worst = std::max(worst, drift);
        largest = std::max(largest, ratio[1]);
    }
    r.pass = ok;
    r.detail = "max ratio " + g3(largest) + ", refinement drift " + g3(100 * worst) + "%";
    return r;
}

CriterionResult cli_and_coverage(const fs::path& dir) {
    CriterionResult r{0, "operation coverage", false, {}, 0.0};
    ExperimentConfig bad;
    bad.pipeline = "no-such-pipeline";
    bad.out_dir = (dir / "cli").string();
    const bool unknown_ok = run_experiment(bad).exit_code == 2;
    ExperimentConfig strip;
    strip.pipeline = "growth-fit";
    strip.solution = "eigenmode:omega=1";
    strip.strip_a = 0.3;
    strip.strip_b = 0.1;
    strip.out_dir = bad.out_dir;
    const auto sr = run_experiment(strip);
    const bool strip_ok = sr.exit_code == 2 && sr.message.find("0 < a < b") != std::string::npos;

    const auto plot = emit_plots({dir / "homotopy.csv", dir / "growth_fit.csv", dir / "recovery.csv"});
    std::ofstream(dir / "plots.gp") << plot.text;
    const auto missing = coverage::missing();
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    r.pass = missing.empty() && unknown_ok && strip_ok && plot.exit_code == 0;
    r.detail = std::to_string(coverage::all_operations().size() - missing.size()) + "/" +
               std::to_string(coverage::all_operations().size()) + " operations ran" +
               (missing.empty() ? "" : "; missing " + list) + (unknown_ok && strip_ok ? "" : "; CLI exit codes wrong");
    return r;
}

CriterionResult timed(const std::function<CriterionResult()>& f, int id, const std::string& name) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = f();
    } catch (const std::exception& e) {
        r = CriterionResult{id, name, false, std::string("error: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const fs::path& out_dir) {
    fs::create_directories(out_dir);
    std::vector<CriterionResult> out;
    out.push_back(timed(semigroup_laws, 1, "semigroup laws"));
    out.push_back(timed([&] { return homotopy_identity(out_dir); }, 2, "homotopy identity"));
    out.push_back(timed([&] { return size_condition(out_dir); }, 3, "size condition"));
    out.push_back(timed([&] { return representation_closure(out_dir); }, 4, "representation closure"));
    out.push_back(timed(counterexample, 5, "counterexample"));
    out.push_back(timed(annulus_decay, 6, "annulus decay"));
    out.push_back(timed(flux_boundedness, 7, "flux boundedness"));
    out.push_back(timed(tent_and_bmo, 8, "tent and bmo^-1"));
    out.push_back(timed(caccioppoli, 9, "Caccioppoli"));
    out.push_back(timed([&] { return cli_and_coverage(out_dir); }, 0, "operation coverage"));
    return out;
}

std::string format_result(const CriterionResult& r) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1fs", r.seconds);
    const std::string head = r.id ? "criterion " + std::to_string(r.id) + " " + r.name : r.name;
    return head + ": " + (r.pass ? "PASS" : "FAIL") + " (" + r.detail + ") [" + secs + "]";
}

}  // namespace caloric
