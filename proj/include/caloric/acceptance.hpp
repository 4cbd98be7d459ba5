#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace caloric {

struct CriterionResult {
    int id = 0;  // 1..9; 0 for the operation-coverage check
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs acceptance criteria 1..9 followed by the operation-coverage check.
/// Report CSVs and a plot script are written into out_dir.
std::vector<CriterionResult> run_acceptance(const std::filesystem::path& out_dir);

/// "criterion N [name]: PASS|FAIL (detail) [s]"
std::string format_result(const CriterionResult& r);

}  // namespace caloric
