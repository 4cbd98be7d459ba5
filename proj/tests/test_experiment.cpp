#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "caloric/error.hpp"
#include "caloric/experiment.hpp"

using namespace caloric;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("caloric_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config round-trips losslessly") {
    ExperimentConfig c;
    c.pipeline = "recover";
    c.datum = "oscillator:omega=2,A=1";
    c.dx = 1.0 / 3.0;
    c.L = 0.1 + 0.2;
    c.ladder_q = 0.7;
    c.compact_panel = {"bump:c=0,r=1", "bump:c=2,r=0.5"};
    c.schwartz_panel = {"probe:he=1,sigma=2"};
    c.growth_radii = {0.1, 1e-7, 2.5e10};
    c.op.method = HeatMethod::spectral_multiplier;
    c.op.mass_normalization = false;
    c.mode = BoundaryMode::periodic;
    const auto back = ExperimentConfig::parse(c.serialize());
    CHECK(back == c);
    CHECK(back.serialize() == c.serialize());
    CHECK(ExperimentConfig::parse("") == ExperimentConfig{});
}

TEST_CASE("config parse errors") {
    CHECK_THROWS_AS(ExperimentConfig::parse("[grid]\nspacing = 1\n"), Error);
    CHECK_THROWS_AS(ExperimentConfig::parse("[grid]\ndx = fast\n"), Error);
    CHECK_THROWS_AS(ExperimentConfig::parse("[grid\n"), Error);
    CHECK_THROWS_AS(ExperimentConfig::parse("[grid]\ndx\n"), Error);
    auto c = ExperimentConfig::parse("# comment\n[solution]\nid = erf_front  # trailing\n");
    CHECK(c.solution == "erf_front");
}

TEST_CASE("validation rejects bad configs") {
    ExperimentConfig c;
    c.solution = "eigenmode:omega=1";
    CHECK_NOTHROW(c.validate());
    ExperimentConfig both = c;
    both.datum = "sign";
    CHECK_THROWS_AS(both.validate(), Error);
    ExperimentConfig unknown = c;
    unknown.solution = "wave:c=1";
    CHECK_THROWS_AS(unknown.validate(), Error);
    ExperimentConfig spectral = c;
    spectral.op.method = HeatMethod::spectral_multiplier;
    CHECK_THROWS_AS(spectral.validate(), Error);
    ExperimentConfig radii = c;
    radii.growth_radii = {1, 2, 3};
    CHECK_THROWS_AS(radii.validate(), Error);
}

TEST_CASE("pipeline exit codes") {
    ExperimentConfig c;
    c.out_dir = scratch("codes").string();
    c.pipeline = "nonsense";
    auto r = run_experiment(c);
    CHECK(r.exit_code == 2);
    CHECK(r.message.find("evolve, tent-norm, growth-fit, homotopy, recover, counterexample, acceptance") !=
          std::string::npos);

    c.pipeline = "growth-fit";
    c.solution = "eigenmode:omega=1";
    c.strip_a = 0.3;
    c.strip_b = 0.1;
    r = run_experiment(c);
    CHECK(r.exit_code == 2);
    CHECK(r.message.find("0 < a < b") != std::string::npos);

    c.strip_a = 0.1;
    c.strip_b = 0.3;
    r = run_experiment(c);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(fs::path(c.out_dir) / "growth_fit.csv"));
    CHECK(slurp(fs::path(c.out_dir) / "summary.txt").find("size condition: PASS") != std::string::npos);

    c.pipeline = "homotopy";
    c.solution = "tychonoff:K=40";
    r = run_experiment(c);
    CHECK(r.exit_code == 2);
    CHECK(r.message.find("domain too small") != std::string::npos);
}

TEST_CASE("homotopy and counterexample pipelines") {
    ExperimentConfig c;
    c.out_dir = scratch("homotopy").string();
    c.pipeline = "homotopy";
    c.solution = "gaussian_kernel:t0=1,x0=0";
    c.dx = 0.1;
    auto r = run_experiment(c);
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(fs::path(c.out_dir) / "homotopy.csv");
    CHECK(csv.rfind("solution,s,t,h_id,grid_level,lhs,rhs,residual\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(fs::exists(fs::path(c.out_dir) / "plots.gp"));

    ExperimentConfig t;
    t.out_dir = scratch("counter").string();
    t.pipeline = "counterexample";
    t.solution = "tychonoff:K=40";
    t.L = 10.0;
    t.dx = 0.02;
    t.ladder_t0 = 0.2;
    t.schwartz_panel = {"probe:he=0,sigma=1"};
    t.strip_samples = 21;
    r = run_experiment(t);
    CHECK(r.exit_code == 0);
    const std::string summary = slurp(fs::path(t.out_dir) / "summary.txt");
    CHECK(summary.find("compact-panel pairings vanish as t -> 0: PASS") != std::string::npos);
    CHECK(summary.find("Schwartz-panel partial integrals diverge: PASS") != std::string::npos);
    CHECK(summary.find("uniqueness: NOT-APPLICABLE") != std::string::npos);
}

TEST_CASE("identical configs give byte-identical reports") {
    ExperimentConfig c;
    c.pipeline = "recover";
    c.datum = "sign";
    c.dx = 0.04;
    c.out_dir = scratch("repro_a").string();
    REQUIRE(run_experiment(c).exit_code == 0);
    const std::string a = slurp(fs::path(c.out_dir) / "recovery.csv");
    c.out_dir = scratch("repro_b").string();
    REQUIRE(run_experiment(c).exit_code == 0);
    CHECK(a == slurp(fs::path(c.out_dir) / "recovery.csv"));
    CHECK(a.rfind("solution,probe_id,t_k,pairing,increment,extrapolated,exact_if_known,error\n", 0) == 0);
}

TEST_CASE("evolve and tent-norm pipelines") {
    ExperimentConfig c;
    c.pipeline = "evolve";
    c.datum = "sign";
    c.ladder_K = 4;
    c.out_dir = scratch("evolve").string();
    auto r = run_experiment(c);
    CHECK(r.exit_code == 0);
    CHECK(slurp(fs::path(c.out_dir) / "evolve.csv").rfind("t,mass,l2,max_abs,max_abs_error\n", 0) == 0);

    c.pipeline = "tent-norm";
    c.datum = "oscillator:omega=2,A=1";
    c.L = 20.0;
    c.dx = 0.04;
    c.grid_levels = 2;
    c.tent_radii = {0.5, 1.0};
    c.tent_extent = 2.0;
    c.tent_spacing = 1.0;
    c.out_dir = scratch("tent").string();
    r = run_experiment(c);
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(fs::path(c.out_dir) / "norm_report.csv");
    CHECK(csv.rfind("quantity,value,family_spec,refinement_level,stability_pct\n", 0) == 0);
    CHECK(csv.find("bmo_inv_norm") != std::string::npos);
}

TEST_CASE("plot scripts") {
    const fs::path dir = scratch("plots");
    fs::create_directories(dir);
    std::ofstream(dir / "b_growth.csv") << "R,x,l2,log_l2,gamma_hat,logC_hat,r2,used_in_fit\n1,5,2,0.69,0.3,-1,0.99,1\n";
    std::ofstream(dir / "a_homotopy.csv") << "solution,s,t,h_id,grid_level,lhs,rhs,residual\n";
    auto p = emit_plots({dir / "b_growth.csv", dir / "a_homotopy.csv"});
    CHECK(p.exit_code == 0);
    CHECK(p.text.find("set multiplot layout 2,1") != std::string::npos);
    CHECK(p.text.find("a_homotopy.csv") < p.text.find("b_growth.csv"));
    CHECK(p.text.find("# warning: a_homotopy.csv has no data rows") != std::string::npos);
    CHECK(p.text.find("0.25 * x") != std::string::npos);
    CHECK(p.text.find("gamma_hat = 0.29999999999999999") != std::string::npos);

    auto single = emit_plots({dir / "b_growth.csv"});
    CHECK(single.text.find("multiplot") == std::string::npos);
    CHECK(emit_plots({dir / "missing.csv"}).exit_code == 1);
}
