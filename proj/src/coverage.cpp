#include "caloric/coverage.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace caloric::coverage {
namespace {

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::set<std::string, std::less<>>& seen() {
    static std::set<std::string, std::less<>> s;
    return s;
}

}  // namespace

const std::vector<std::string>& all_operations() {
    static const std::vector<std::string> ops = {
        "integrate_ball",      "integrate_strip_L2",     "gradient",
        "heat_evolve",         "heat_evolve_gradient",   "annulus_decay_check",
        "eval_solution",       "tychonoff_eval",         "heat_residual",
        "strip_growth_fit",    "tent_norm",              "bmo_inv_norm",
        "schwartz_seminorm",   "tent_to_strip_bound",    "caccioppoli_ratio",
        "homotopy_residual",   "flux_functional",        "recover_initial_data",
        "uniqueness_probe",    "convergence_mode_probe", "pairing_bound_check",
        "snapshot_boundedness_probe", "run_experiment",  "emit_plots",
    };
    return ops;
}

void mark(std::string_view op) {
    std::lock_guard lock(registry_mutex());
    if (seen().find(op) == seen().end()) {
        seen().emplace(op);
    }
}

std::vector<std::string> missing() {
    std::lock_guard lock(registry_mutex());
    std::vector<std::string> out;
    for (const auto& op : all_operations()) {
        if (seen().find(op) == seen().end()) {
            out.push_back(op);
        }
    }
    return out;
}

void reset() {
    std::lock_guard lock(registry_mutex());
    seen().clear();
}

}  // namespace caloric::coverage
