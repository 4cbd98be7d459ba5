#pragma once

#include <map>
#include <string>
#include <vector>

#include "caloric/grid_field.hpp"

namespace caloric {

/// "name:key=value,key=value" identifiers used for solutions, data and probes.
struct ParsedId {
    std::string name;
    std::map<std::string, std::string> params;

    static ParsedId parse(const std::string& text);

    bool has(const std::string& key) const { return params.count(key) > 0; }
    double number(const std::string& key, double fallback) const;
    int integer(const std::string& key, int fallback) const;
    /// ';'-separated list; a single value fills both components.
    Point point(const std::string& key, Point fallback) const;
    std::vector<double> list(const std::string& key) const;
    /// Throws unless every key is in `allowed`.
    void only(const std::vector<std::string>& allowed) const;
};

std::string format_number(double v);

}  // namespace caloric
