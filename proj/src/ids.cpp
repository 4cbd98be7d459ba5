#include "caloric/ids.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "caloric/error.hpp"

namespace caloric {

namespace {
double to_double(const std::string& text, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Argument, "parameter '" + key + "' is not a number: '" + text + "'");
}
}  // namespace

ParsedId ParsedId::parse(const std::string& text) {
    ParsedId id;
    const auto colon = text.find(':');
    id.name = text.substr(0, colon);
    require(!id.name.empty(), ErrorKind::Argument, "empty identifier");
    if (colon == std::string::npos) return id;
    std::istringstream ss(text.substr(colon + 1));
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        require(eq != std::string::npos && eq > 0, ErrorKind::Argument,
                "malformed parameter '" + item + "' in '" + text + "'");
        id.params[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return id;
}

double ParsedId::number(const std::string& key, double fallback) const {
    const auto it = params.find(key);
    return it == params.end() ? fallback : to_double(it->second, key);
}

int ParsedId::integer(const std::string& key, int fallback) const {
    const double v = number(key, fallback);
    require(v == static_cast<int>(v), ErrorKind::Argument, "parameter '" + key + "' must be an integer");
    return static_cast<int>(v);
}

std::vector<double> ParsedId::list(const std::string& key) const {
    std::vector<double> out;
    const auto it = params.find(key);
    if (it == params.end()) return out;
    std::istringstream ss(it->second);
    for (std::string item; std::getline(ss, item, ';');) out.push_back(to_double(item, key));
    return out;
}

Point ParsedId::point(const std::string& key, Point fallback) const {
    const auto v = list(key);
    if (v.empty()) return fallback;
    if (v.size() == 1) return {v[0], v[0]};
    return {v[0], v[1]};
}

void ParsedId::only(const std::vector<std::string>& allowed) const {
    for (const auto& [k, v] : params) {
        require(std::find(allowed.begin(), allowed.end(), k) != allowed.end(), ErrorKind::Argument,
                "unknown parameter '" + k + "' for '" + name + "'");
    }
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace caloric
