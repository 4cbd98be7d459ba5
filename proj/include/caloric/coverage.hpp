#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace caloric::coverage {

/// Records that the named operation ran at least once in this process.
void mark(std::string_view op);

/// Every operation name the library can mark.
const std::vector<std::string>& all_operations();

std::vector<std::string> missing();
void reset();

}  // namespace caloric::coverage
