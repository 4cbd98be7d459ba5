#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "caloric/grid_field.hpp"
#include "caloric/semigroup.hpp"

namespace caloric {

/// Pipelines understood by run_experiment, in CLI order.
const std::vector<std::string>& pipeline_names();

/// Flat sectioned key = value configuration. Lists of numbers are comma
/// separated; lists of ids are separated by '|'. Panels set to "default" use
/// the fixed default panels.
struct ExperimentConfig {
    // [run]
    std::string pipeline = "evolve";
    // [solution] / [datum]; exactly one of the two ids is set
    std::string solution;
    std::string datum;
    std::string evolution = "exact";  // exact | numeric, for data
    // [grid]
    int dim = 1;
    double L = 16.0;
    double dx = 0.05;
    BoundaryMode mode = BoundaryMode::zero_padded;
    int grid_levels = 3;
    // [strip]
    double strip_a = 0.1;
    double strip_b = 0.3;
    int strip_samples = 41;
    // [ladder]; K = 0 runs the ladder down to the resolution floor
    double ladder_t0 = 0.5;
    double ladder_q = 0.5;
    int ladder_K = 0;
    // [panels]
    std::vector<std::string> compact_panel{"default"};
    std::vector<std::string> schwartz_panel{"default"};
    std::vector<double> rho{2.0, 4.0, 6.0, 8.0};
    double t_fixed = 0.1;
    // [operator]
    HeatOperatorConfig op;
    // [radii]
    std::vector<double> growth_radii{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0};
    std::vector<double> tent_radii{0.5, 1.0, 2.0};
    double tent_extent = 1.0;
    double tent_spacing = 0.5;
    // [homotopy]
    double homotopy_s = 0.5;
    double homotopy_t = 1.0;
    std::string homotopy_h = "bump:c=0,r=1";
    // [output]
    std::string out_dir = "out";

    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::filesystem::path& path);
    /// Lossless text form (%.17g numbers); parse(serialize()) == *this.
    std::string serialize() const;
    /// Resolves every id and checks every invariant; throws Config or Argument errors.
    void validate() const;

    SpatialGrid grid() const;
    bool operator==(const ExperimentConfig&) const;
};

struct ExperimentResult {
    int exit_code = 0;
    std::vector<std::string> summary;  // PASS/FAIL and info lines, as written to summary.txt
    std::vector<std::filesystem::path> files;
    std::string message;  // error text for exit codes 1 and 2
};

/// Runs cfg.pipeline, writing CSVs, summary.txt and plots.gp into cfg.out_dir.
/// Exit 0 on success, 1 on an invariant violation, 2 on a configuration error.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct PlotScript {
    int exit_code = 0;
    std::string text;
    std::string message;
};

/// Gnuplot script text for report CSVs, one panel per file ordered by file
/// name. A missing file gives exit code 1.
PlotScript emit_plots(std::vector<std::filesystem::path> reports);

}  // namespace caloric
