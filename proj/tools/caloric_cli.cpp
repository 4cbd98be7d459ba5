#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <string>

#include "caloric/error.hpp"
#include "caloric/experiment.hpp"

int main(int argc, char** argv) {
    using namespace caloric;
    std::string valid;
    for (const auto& n : pipeline_names()) valid += (valid.empty() ? "" : " | ") + n;

    CLI::App app{"Heat semigroup experiments: evolve data, measure norms, check representation properties."};
    std::string pipeline;
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<int> grid_levels;
    std::optional<std::string> method;
    app.add_option("pipeline", pipeline, valid)->required();
    app.add_option("--config", config_path, "Experiment config file (sectioned key = value)");
    app.add_option("--out", out_dir, "Output directory (overrides [output] dir)");
    app.add_option("--grid-levels", grid_levels, "Number of grid levels (overrides [grid] levels)");
    app.add_option("--method", method, "Heat operator: kernel | spectral (overrides [operator] method)");
    app.footer("CALORIC_THREADS caps worker threads. Exit codes: 0 success, 1 invariant violation, 2 config error.");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = ExperimentConfig::load(config_path);
        cfg.pipeline = pipeline;
        if (out_dir) cfg.out_dir = *out_dir;
        if (grid_levels) cfg.grid_levels = *grid_levels;
        if (method) cfg.op.method = parse_heat_method(*method);
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }

    const ExperimentResult res = run_experiment(cfg);
    for (const auto& line : res.summary) std::printf("%s\n", line.c_str());
    if (res.exit_code != 0 && !res.message.empty()) std::fprintf(stderr, "%s\n", res.message.c_str());
    for (const auto& f : res.files) std::printf("wrote %s\n", f.string().c_str());
    return res.exit_code;
}
