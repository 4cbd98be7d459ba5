#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace caloric {

enum class ErrorKind {
    Argument,
    DomainTooSmall,
    InsufficientResolution,
    InsufficientDecayData,
    Coverage,
    Data,
    Degenerate,
    InvariantViolation,
    Config,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-checkable kind; every precondition failure in
/// the library is reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
    if (!condition) {
        throw Error(kind, message);
    }
}

}  // namespace caloric
