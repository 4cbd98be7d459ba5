#include "caloric/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "caloric/acceptance.hpp"
#include "caloric/caloric_zoo.hpp"
#include "caloric/coverage.hpp"
#include "caloric/error.hpp"
#include "caloric/norms.hpp"
#include "caloric/numeric.hpp"
#include "caloric/representation.hpp"

namespace caloric {

namespace fs = std::filesystem;

const std::vector<std::string>& pipeline_names() {
    static const std::vector<std::string> names{"evolve",  "tent-norm",      "growth-fit", "homotopy",
                                                "recover", "counterexample", "acceptance"};
    return names;
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [p, ec] = std::from_chars(text.data(), end, v);
    require(ec == std::errc() && p == end, ErrorKind::Config, "'" + key + "' expects a number, got '" + text + "'");
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    int v = 0;
    const auto* end = text.data() + text.size();
    const auto [p, ec] = std::from_chars(text.data(), end, v);
    require(ec == std::errc() && p == end, ErrorKind::Config, "'" + key + "' expects an integer, got '" + text + "'");
    return v;
}

bool to_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw Error(ErrorKind::Config, "'" + key + "' expects true or false, got '" + text + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) out.push_back(to_double(key, item));
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return s;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " | " : "") + v[i];
    return s;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

std::vector<TestFunction> make_compact_panel(const ExperimentConfig& c) {
    if (c.compact_panel.size() == 1 && c.compact_panel[0] == "default") return default_compact_panel(c.dim);
    std::vector<TestFunction> out;
    for (const auto& id : c.compact_panel) out.push_back(TestFunction::parse(id, c.dim));
    return out;
}

std::vector<SchwartzProbe> make_schwartz_panel(const ExperimentConfig& c) {
    if (c.schwartz_panel.size() == 1 && c.schwartz_panel[0] == "default") return default_schwartz_panel(c.dim);
    std::vector<SchwartzProbe> out;
    for (const auto& id : c.schwartz_panel) out.push_back(SchwartzProbe::parse(id, c.dim));
    return out;
}

}  // namespace

// -------------------------------------------------------------- config

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig c;
    std::string section;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            require(line.back() == ']', ErrorKind::Config, "line " + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        require(eq != std::string::npos, ErrorKind::Config, "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string full = section + "." + key;
        if (full == "run.pipeline") c.pipeline = val;
        else if (full == "solution.id") c.solution = val;
        else if (full == "datum.id") c.datum = val;
        else if (full == "datum.evolution") c.evolution = val;
        else if (full == "grid.dim") c.dim = to_int(full, val);
        else if (full == "grid.L") c.L = to_double(full, val);
        else if (full == "grid.dx") c.dx = to_double(full, val);
        else if (full == "grid.mode") c.mode = parse_boundary_mode(val);
        else if (full == "grid.levels") c.grid_levels = to_int(full, val);
        else if (full == "strip.a") c.strip_a = to_double(full, val);
        else if (full == "strip.b") c.strip_b = to_double(full, val);
        else if (full == "strip.samples") c.strip_samples = to_int(full, val);
        else if (full == "ladder.t0") c.ladder_t0 = to_double(full, val);
        else if (full == "ladder.q") c.ladder_q = to_double(full, val);
        else if (full == "ladder.K") c.ladder_K = to_int(full, val);
        else if (full == "panels.compact") c.compact_panel = split(val, '|');
        else if (full == "panels.schwartz") c.schwartz_panel = split(val, '|');
        else if (full == "panels.rho") c.rho = to_list(full, val);
        else if (full == "panels.t_fixed") c.t_fixed = to_double(full, val);
        else if (full == "operator.method") c.op.method = parse_heat_method(val);
        else if (full == "operator.truncation_factor") c.op.truncation_factor = to_double(full, val);
        else if (full == "operator.mass_normalization") c.op.mass_normalization = to_bool(full, val);
        else if (full == "radii.growth") c.growth_radii = to_list(full, val);
        else if (full == "radii.tent") c.tent_radii = to_list(full, val);
        else if (full == "radii.tent_extent") c.tent_extent = to_double(full, val);
        else if (full == "radii.tent_spacing") c.tent_spacing = to_double(full, val);
        else if (full == "homotopy.s") c.homotopy_s = to_double(full, val);
        else if (full == "homotopy.t") c.homotopy_t = to_double(full, val);
        else if (full == "homotopy.h") c.homotopy_h = val;
        else if (full == "output.dir") c.out_dir = val;
        else throw Error(ErrorKind::Config, "line " + std::to_string(lineno) + ": unknown key '" + key + "' in [" + section + "]");
    }
    return c;
}

ExperimentConfig ExperimentConfig::load(const fs::path& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::Config, "cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ExperimentConfig::serialize() const {
    std::ostringstream os;
    os << "[run]\npipeline = " << pipeline << "\n\n";
    os << "[solution]\nid = " << solution << "\n\n";
    os << "[datum]\nid = " << datum << "\nevolution = " << evolution << "\n\n";
    os << "[grid]\ndim = " << dim << "\nL = " << num(L) << "\ndx = " << num(dx) << "\nmode = " << to_string(mode)
       << "\nlevels = " << grid_levels << "\n\n";
    os << "[strip]\na = " << num(strip_a) << "\nb = " << num(strip_b) << "\nsamples = " << strip_samples << "\n\n";
    os << "[ladder]\nt0 = " << num(ladder_t0) << "\nq = " << num(ladder_q) << "\nK = " << ladder_K << "\n\n";
    os << "[panels]\ncompact = " << join(compact_panel) << "\nschwartz = " << join(schwartz_panel)
       << "\nrho = " << join(rho) << "\nt_fixed = " << num(t_fixed) << "\n\n";
    os << "[operator]\nmethod = " << to_string(op.method) << "\ntruncation_factor = " << num(op.truncation_factor)
       << "\nmass_normalization = " << (op.mass_normalization ? "true" : "false") << "\n\n";
    os << "[radii]\ngrowth = " << join(growth_radii) << "\ntent = " << join(tent_radii)
       << "\ntent_extent = " << num(tent_extent) << "\ntent_spacing = " << num(tent_spacing) << "\n\n";
    os << "[homotopy]\ns = " << num(homotopy_s) << "\nt = " << num(homotopy_t) << "\nh = " << homotopy_h << "\n\n";
    os << "[output]\ndir = " << out_dir << "\n";
    return os.str();
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
    return pipeline == o.pipeline && solution == o.solution && datum == o.datum && evolution == o.evolution &&
           dim == o.dim && L == o.L && dx == o.dx && mode == o.mode && grid_levels == o.grid_levels &&
           strip_a == o.strip_a && strip_b == o.strip_b && strip_samples == o.strip_samples &&
           ladder_t0 == o.ladder_t0 && ladder_q == o.ladder_q && ladder_K == o.ladder_K &&
           compact_panel == o.compact_panel && schwartz_panel == o.schwartz_panel && rho == o.rho &&
           t_fixed == o.t_fixed && op.method == o.op.method && op.truncation_factor == o.op.truncation_factor &&
           op.mass_normalization == o.op.mass_normalization && growth_radii == o.growth_radii &&
           tent_radii == o.tent_radii && tent_extent == o.tent_extent && tent_spacing == o.tent_spacing &&
           homotopy_s == o.homotopy_s && homotopy_t == o.homotopy_t && homotopy_h == o.homotopy_h &&
           out_dir == o.out_dir;
}

SpatialGrid ExperimentConfig::grid() const { return SpatialGrid(dim, L, dx, mode); }

void ExperimentConfig::validate() const {
    const auto& names = pipeline_names();
    if (std::find(names.begin(), names.end(), pipeline) == names.end()) {
        std::string valid;
        for (const auto& n : names) valid += (valid.empty() ? "" : ", ") + n;
        throw Error(ErrorKind::Config, "unknown pipeline '" + pipeline + "'; valid pipelines: " + valid);
    }
    if (pipeline == "acceptance") return;
    require(dim == 1 || dim == 2, ErrorKind::Config, "grid.dim must be 1 or 2");
    const SpatialGrid g = grid();
    op.validate(g);
    require(solution.empty() != datum.empty(), ErrorKind::Config, "set exactly one of [solution] id and [datum] id");
    if (!solution.empty()) AnalyticSolution::parse(solution, dim);
    if (!datum.empty()) InitialDatum::parse(datum, dim);
    require(evolution == "exact" || evolution == "numeric", ErrorKind::Config, "datum.evolution must be exact or numeric");
    require(grid_levels >= 1 && grid_levels <= 6, ErrorKind::Config, "grid.levels must lie in [1, 6]");
    (void)StripSpec(strip_a, strip_b);
    require(strip_samples >= 3, ErrorKind::Config, "strip.samples must be at least 3");
    if (ladder_K > 0) {
        SnapshotLadder(ladder_t0, ladder_q, ladder_K).check_resolution(g);
    } else {
        (void)SnapshotLadder::down_to_resolution(ladder_t0, ladder_q, g);
    }
    (void)make_compact_panel(*this);
    (void)make_schwartz_panel(*this);
    require(!rho.empty() && t_fixed > 0.0, ErrorKind::Config, "panels.rho must be non-empty and t_fixed positive");
    for (double r : rho) require(r > 0.0 && r <= L, ErrorKind::Config, "panels.rho entries must lie in (0, L]");
    require(growth_radii.size() >= 5, ErrorKind::Config, "radii.growth needs at least 5 radii");
    for (std::size_t i = 1; i < growth_radii.size(); ++i) {
        require(growth_radii[i] > growth_radii[i - 1], ErrorKind::Config, "radii.growth must increase");
    }
    require(growth_radii.back() <= 0.8 * L, ErrorKind::Config, "largest growth radius exceeds 0.8 L");
    require(!tent_radii.empty(), ErrorKind::Config, "radii.tent must be non-empty");
    const BallFamily fam = BallFamily::lattice(dim, tent_extent, tent_spacing, tent_radii);
    require(tent_extent + fam.max_radius() <= L, ErrorKind::Config, "tent balls leave the grid");
    require(0.0 < homotopy_s && homotopy_s < homotopy_t, ErrorKind::Config, "homotopy needs 0 < s < t");
    const TestFunction h = TestFunction::parse(homotopy_h, dim);
    require(std::abs(h.center()[0]) + h.radius() < 0.9 * L, ErrorKind::Config, "homotopy.h is not inside the grid");
    require(!out_dir.empty(), ErrorKind::Config, "output.dir must be set");
}

// ------------------------------------------------------------ pipelines

namespace {

struct Run {
    const ExperimentConfig& cfg;
    fs::path dir;
    ExperimentResult result;
    bool violated = false;

    std::ofstream open(const std::string& name) {
        result.files.push_back(dir / name);
        std::ofstream os(dir / name);
        require(os.good(), ErrorKind::Config, "cannot write " + (dir / name).string());
        return os;
    }
    void line(const std::string& s) { result.summary.push_back(s); }
    void check(const std::string& what, bool ok, const std::string& detail = {}) {
        line(what + ": " + (ok ? "PASS" : "FAIL") + (detail.empty() ? "" : " (" + detail + ")"));
    }
    void invariant(const std::string& what, bool ok, const std::string& detail = {}) {
        check(what, ok, detail);
        if (!ok) violated = true;
    }
};

SnapshotLadder ladder_of(const ExperimentConfig& c, const SpatialGrid& g) {
    if (c.ladder_K > 0) return SnapshotLadder(c.ladder_t0, c.ladder_q, c.ladder_K);
    return SnapshotLadder::down_to_resolution(c.ladder_t0, c.ladder_q, g);
}

SnapshotSource source_of(const ExperimentConfig& c, const SpatialGrid& g) {
    if (!c.solution.empty()) return SnapshotSource::from_solution(AnalyticSolution::parse(c.solution, c.dim), g);
    const InitialDatum d = InitialDatum::parse(c.datum, c.dim);
    if (c.evolution == "numeric") return SnapshotSource::from_datum_numeric(d, g, c.op);
    return SnapshotSource::from_datum(d, g);
}

SpaceTimeField field_of(const SnapshotSource& u, const std::vector<double>& times) {
    std::vector<Samples> slices(times.size());
    parallel_for(times.size(), [&](std::size_t i) { slices[i] = u.at(times[i]); });
    std::vector<double> values;
    for (const auto& s : slices) values.insert(values.end(), s.begin(), s.end());
    return SpaceTimeField(u.grid, times, std::move(values), u.label);
}

double l2(const SpatialGrid& g, std::span<const double> f) {
    Samples sq(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) sq[k] = f[k] * f[k];
    return std::sqrt(integrate_grid(g, sq));
}

double max_abs(std::span<const double> f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

void evolve_pipeline(Run& run) {
    const auto& c = run.cfg;
    const SpatialGrid g = c.grid();
    const auto times = ladder_of(c, g).times();
    Samples initial;
    double t_start = 0.0;
    std::function<Samples(double)> exact;
    if (!c.datum.empty()) {
        const InitialDatum d = InitialDatum::parse(c.datum, c.dim);
        initial = d.sample(g);
        exact = [d, g](double t) { return sample(g, [&](const Point& x) { return d.evolved(t, x); }); };
    } else {
        const AnalyticSolution s = AnalyticSolution::parse(c.solution, c.dim);
        t_start = times.back() * c.ladder_q;
        s.check_time(t_start);
        initial = sample(g, [&](const Point& x) { return s.value(t_start, x); });
        exact = [s, g](double t) { return sample(g, [&](const Point& x) { return s.value(t, x); }); };
    }
    const double sup0 = max_abs(initial);
    auto os = run.open("evolve.csv");
    os << "t,mass,l2,max_abs,max_abs_error\n";
    bool max_principle = true;
    for (auto it = times.rbegin(); it != times.rend(); ++it) {
        const double t = *it;
        const Samples v = heat_evolve(g, initial, t - t_start, c.op);
        const Samples e = exact(t);
        double err = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) err = std::max(err, std::abs(v[k] - e[k]));
        const double sup = max_abs(v);
        if (c.op.method == HeatMethod::kernel_quadrature && sup > sup0 * (1.0 + 1e-10) + 1e-12) max_principle = false;
        os << num(t) << ',' << num(integrate_grid(g, v)) << ',' << num(l2(g, v)) << ',' << num(sup) << ',' << num(err)
           << '\n';
    }
    if (c.op.method == HeatMethod::kernel_quadrature) run.invariant("maximum principle", max_principle);
    run.line("evolved " + std::to_string(times.size()) + " times with the " + to_string(c.op.method) + " method");
}

void tent_pipeline(Run& run) {
    const auto& c = run.cfg;
    const BallFamily fam = BallFamily::lattice(c.dim, c.tent_extent, c.tent_spacing, c.tent_radii);
    std::vector<NormReportRow> rows;
    SpatialGrid g = c.grid();
    double prev_tent = 0.0, prev_bmo = 0.0;
    bool finite = true;
    for (int level = 0; level < c.grid_levels; ++level) {
        const SnapshotSource u = source_of(c, g);
        const auto field = field_of(u, tent_ladder(g, fam));
        const TentNorm tn = tent_norm(field, fam);
        finite = finite && std::isfinite(tn.value);
        rows.push_back({"tent_norm", tn.value, fam.describe(), level, level ? stability_pct(prev_tent, tn.value) : 0.0});
        prev_tent = tn.value;
        if (!c.datum.empty()) {
            const double b = bmo_inv_norm(g, InitialDatum::parse(c.datum, c.dim), fam, c.op).value;
            finite = finite && std::isfinite(b);
            rows.push_back({"bmo_inv_norm", b, fam.describe(), level, level ? stability_pct(prev_bmo, b) : 0.0});
            prev_bmo = b;
        }
        if (level + 1 < c.grid_levels) g = g.refined(2);
    }
    auto os = run.open("norm_report.csv");
    write_norm_report(os, rows);
    run.invariant("tent norm finite", finite);
    run.line("tent_norm = " + num(prev_tent) + " over " + fam.describe());
}

void growth_pipeline(Run& run) {
    const auto& c = run.cfg;
    const SpatialGrid g = c.grid();
    const StripSpec strip(c.strip_a, c.strip_b);
    const auto field = field_of(source_of(c, g), linspace(c.strip_a, c.strip_b, c.strip_samples));
    const GrowthFit fit = strip_growth_fit(field, strip, c.growth_radii);
    auto os = run.open("growth_fit.csv");
    os << "R,x,l2,log_l2,gamma_hat,logC_hat,r2,used_in_fit\n";
    for (std::size_t i = 0; i < fit.radii.size(); ++i) {
        const double R = fit.radii[i];
        os << num(R) << ',' << num(R * R / (strip.b - strip.a)) << ',' << num(fit.l2_values[i]) << ','
           << num(std::log(fit.l2_values[i])) << ',' << num(fit.gamma_hat) << ',' << num(fit.logC_hat) << ','
           << num(fit.r2_of_fit) << ',' << (i >= fit.fit_start ? 1 : 0) << '\n';
    }
    run.line("gamma_hat = " + num(fit.gamma_hat) + ", r2 = " + num(fit.r2_of_fit));
    run.line("size condition: " + to_string(fit.verdict));
}

void homotopy_pipeline(Run& run) {
    const auto& c = run.cfg;
    require(!c.solution.empty(), ErrorKind::Config, "the homotopy pipeline needs a [solution] id");
    const AnalyticSolution u = AnalyticSolution::parse(c.solution, c.dim);
    const TestFunction h = TestFunction::parse(c.homotopy_h, c.dim);
    const auto rows = homotopy_levels(u, c.grid(), c.homotopy_s, c.homotopy_t, h, c.grid_levels, c.op);
    auto os = run.open("homotopy.csv");
    write_homotopy_csv(os, rows);
    bool decreasing = true, rate = true;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        decreasing = decreasing && rows[i].residual < rows[i - 1].residual;
        rate = rate && rows[i].residual * 3.0 <= rows[i - 1].residual;
    }
    run.invariant("homotopy residual <= 1e-5 at the finest level", rows.back().residual <= 1e-5,
                  "residual " + num(rows.back().residual));
    run.check("residual decreasing over grid levels", decreasing);
    run.check("residual decreases >= 3x per halving", rate);
}

void recover_pipeline(Run& run) {
    const auto& c = run.cfg;
    const SpatialGrid g = c.grid();
    const RecoveryReport rep = recover_initial_data(source_of(c, g), ladder_of(c, g), make_schwartz_panel(c));
    auto os = run.open("recovery.csv");
    write_recovery_csv(os, rep);
    bool known = false;
    for (const auto& p : rep.probes) {
        run.line(p.probe_id + ": " + (p.recoverable ? "RECOVERABLE" : "NOT-RECOVERABLE") + " limit " +
                 num(p.extrapolated));
        known = known || p.exact.has_value();
    }
    if (known && rep.all_recoverable) {
        run.invariant("recovered pairings within 1e-4", rep.max_error <= 1e-4, "max error " + num(rep.max_error));
    }
}

void counterexample_pipeline(Run& run) {
    const auto& c = run.cfg;
    const SpatialGrid g = c.grid();
    const SnapshotSource u = source_of(c, g);
    const SnapshotLadder ladder = ladder_of(c, g);
    const auto rep = convergence_mode_probe(u, ladder, make_compact_panel(c), make_schwartz_panel(c), c.rho, c.t_fixed);
    auto os = run.open("counterexample.csv");
    os << "panel,probe_id,index,abscissa,value,flag\n";
    for (const auto& tr : rep.compact) {
        for (std::size_t k = 0; k < tr.pairings.size(); ++k) {
            os << "compact,\"" << tr.id << "\"," << k << ',' << num(rep.times[k]) << ',' << num(tr.pairings[k]) << ','
               << (tr.vanishes ? 1 : 0) << '\n';
        }
    }
    for (const auto& tr : rep.schwartz) {
        for (std::size_t m = 0; m < tr.partials.size(); ++m) {
            os << "schwartz,\"" << tr.id << "\"," << m << ',' << num(tr.rho[m]) << ',' << num(tr.partials[m]) << ','
               << (tr.truncated[m] ? 1 : 0) << '\n';
        }
    }
    const StripSpec strip(c.strip_a, c.strip_b);
    const auto field = field_of(u, linspace(c.strip_a, c.strip_b, c.strip_samples));
    const GrowthFit fit = strip_growth_fit(field, strip, c.growth_radii);
    const auto uq = uniqueness_probe(u, ladder, make_schwartz_panel(c), fit);
    run.check("compact-panel pairings vanish as t -> 0", rep.compact_vanish);
    run.check("Schwartz-panel partial integrals diverge", rep.schwartz_diverge);
    for (const auto& tr : rep.schwartz) {
        for (std::size_t m = 0; m < tr.rho.size(); ++m) {
            if (tr.truncated[m]) run.line(tr.id + ": series truncated within rho = " + num(tr.rho[m]));
        }
    }
    run.line("size condition: " + to_string(fit.verdict) + " (gamma_hat = " + num(fit.gamma_hat) + ")");
    run.line("uniqueness: " + to_string(uq.verdict));
}

void acceptance_pipeline(Run& run) {
    const auto results = run_acceptance(run.dir);
    for (const auto& r : results) {
        run.invariant(r.id ? "criterion " + std::to_string(r.id) + " " + r.name : r.name, r.pass, r.detail);
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    coverage::mark("run_experiment");
    Run run{cfg, fs::path(cfg.out_dir), {}};
    try {
        cfg.validate();
        fs::create_directories(run.dir);
    } catch (const Error& e) {
        run.result.exit_code = 2;
        run.result.message = e.what();
        return run.result;
    } catch (const fs::filesystem_error& e) {
        run.result.exit_code = 2;
        run.result.message = e.what();
        return run.result;
    }
    try {
        if (cfg.pipeline == "evolve") evolve_pipeline(run);
        else if (cfg.pipeline == "tent-norm") tent_pipeline(run);
        else if (cfg.pipeline == "growth-fit") growth_pipeline(run);
        else if (cfg.pipeline == "homotopy") homotopy_pipeline(run);
        else if (cfg.pipeline == "recover") recover_pipeline(run);
        else if (cfg.pipeline == "counterexample") counterexample_pipeline(run);
        else acceptance_pipeline(run);
    } catch (const Error& e) {
        const bool config = e.kind() == ErrorKind::Config || e.kind() == ErrorKind::Argument ||
                            e.kind() == ErrorKind::DomainTooSmall || e.kind() == ErrorKind::InsufficientResolution;
        run.result.exit_code = config ? 2 : 1;
        run.result.message = e.what();
        run.line(std::string("error: ") + e.what());
    }
    if (run.violated && run.result.exit_code == 0) run.result.exit_code = 1;

    std::vector<fs::path> csvs;
    for (const auto& f : run.result.files) {
        if (f.extension() == ".csv") csvs.push_back(f);
    }
    if (!csvs.empty() && run.cfg.pipeline != "acceptance") {
        const PlotScript plot = emit_plots(csvs);
        std::ofstream(run.dir / "plots.gp") << plot.text;
        run.result.files.push_back(run.dir / "plots.gp");
    }
    std::ofstream summary(run.dir / "summary.txt");
    summary << "pipeline: " << cfg.pipeline << '\n';
    for (const auto& s : run.result.summary) summary << s << '\n';
    summary << "exit: " << run.result.exit_code << '\n';
    run.result.files.push_back(run.dir / "summary.txt");
    return run.result;
}

// ---------------------------------------------------------------- plots

namespace {

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> csv_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') quoted = !quoted;
        else if (ch == ',' && !quoted) {
            out.push_back(cur);
            cur.clear();
        } else cur += ch;
    }
    out.push_back(cur);
    return out;
}

Csv read_csv(const fs::path& p) {
    std::ifstream in(p);
    Csv csv;
    std::string line;
    if (std::getline(in, line)) csv.header = csv_fields(trim(line));
    while (std::getline(in, line)) {
        line = trim(line);
        if (!line.empty()) csv.rows.push_back(csv_fields(line));
    }
    return csv;
}

int column(const Csv& csv, const std::string& name) {
    for (std::size_t i = 0; i < csv.header.size(); ++i) {
        if (csv.header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::string block_name(std::size_t i) { return "$data" + std::to_string(i); }

void data_block(std::ostringstream& os, const std::string& name, const Csv& csv, const std::vector<int>& cols) {
    os << name << " << EOD\n";
    for (const auto& r : csv.rows) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const std::size_t c = static_cast<std::size_t>(cols[j]);
            os << (j ? " " : "") << (c < r.size() && !r[c].empty() ? r[c] : "NaN");
        }
        os << '\n';
    }
    os << "EOD\n";
}

void panel(std::ostringstream& os, std::size_t index, const fs::path& path, const Csv& csv) {
    const std::string name = block_name(index);
    const std::string title = path.filename().string();
    os << "# panel " << index + 1 << ": " << title << '\n';
    if (csv.rows.empty()) os << "# warning: " << title << " has no data rows\n";
    os << "set title \"" << title << "\"\n";
    if (column(csv, "residual") >= 0 && column(csv, "grid_level") >= 0) {
        data_block(os, name, csv, {column(csv, "grid_level"), column(csv, "residual")});
        os << "set xlabel \"grid level\"\nset ylabel \"residual\"\nset logscale y\n";
        os << "plot " << name << " using 1:2 with linespoints title \"|lhs - rhs|\"\nunset logscale y\n";
    } else if (column(csv, "gamma_hat") >= 0) {
        data_block(os, name, csv, {column(csv, "x"), column(csv, "log_l2")});
        double gamma = 0.0, logc = 0.0;
        if (!csv.rows.empty()) {
            gamma = std::stod(csv.rows[0][column(csv, "gamma_hat")]);
            logc = std::stod(csv.rows[0][column(csv, "logC_hat")]);
        }
        os << "gamma_hat = " << num(gamma) << "\nlogC_hat = " << num(logc) << '\n';
        os << "fit(x) = logC_hat + gamma_hat * x\nreference(x) = logC_hat + 0.25 * x\n";
        os << "set xlabel \"R^2/(b-a)\"\nset ylabel \"log ||u||_{L^2}\"\n";
        os << "plot " << name << " using 1:2 with points title \"data\", fit(x) title \"fit\", "
           << "reference(x) dashtype 2 title \"slope 1/4\"\n";
    } else if (column(csv, "t_k") >= 0 && column(csv, "pairing") >= 0) {
        data_block(os, name, csv, {column(csv, "t_k"), column(csv, "pairing")});
        os << "set xlabel \"t_k\"\nset ylabel \"pairing\"\nset logscale x\n";
        os << "plot " << name << " using 1:2 with linespoints title \"<u(t_k), phi>\"\nunset logscale x\n";
    } else {
        data_block(os, name, csv, {0, static_cast<int>(std::min<std::size_t>(1, csv.header.size() - 1))});
        const std::string x = csv.header.empty() ? "x" : csv.header[0];
        const std::string y = csv.header.size() > 1 ? csv.header[1] : "y";
        os << "set xlabel \"" << x << "\"\nset ylabel \"" << y << "\"\n";
        os << "plot " << name << " using 1:2 with linespoints title \"" << y << "\"\n";
    }
}

}  // namespace

PlotScript emit_plots(std::vector<fs::path> reports) {
    coverage::mark("emit_plots");
    PlotScript out;
    for (const auto& p : reports) {
        if (!fs::is_regular_file(p)) {
            out.exit_code = 1;
            out.message = "missing report " + p.string();
            return out;
        }
    }
    std::sort(reports.begin(), reports.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    std::ostringstream os;
    os << "# gnuplot script\nset terminal pngcairo size 900," << 420 * std::max<std::size_t>(1, reports.size())
       << "\nset output \"plots.png\"\nset key left top\n";
    if (reports.size() > 1) os << "set multiplot layout " << reports.size() << ",1\n";
    for (std::size_t i = 0; i < reports.size(); ++i) panel(os, i, reports[i], read_csv(reports[i]));
    if (reports.size() > 1) os << "unset multiplot\n";
    out.text = os.str();
    return out;
}

}  // namespace caloric
