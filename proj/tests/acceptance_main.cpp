#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "caloric/acceptance.hpp"

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "acceptance_out";
    const auto results = caloric::run_acceptance(dir);
    bool ok = true;
    for (const auto& r : results) {
        std::printf("%s\n", caloric::format_result(r).c_str());
        ok = ok && r.pass;
    }
    std::printf("acceptance: %s\n", ok ? "PASS" : "FAIL");
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
