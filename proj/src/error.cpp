#include "caloric/error.hpp"

namespace caloric {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Argument: return "argument error";
        case ErrorKind::DomainTooSmall: return "domain too small";
        case ErrorKind::InsufficientResolution: return "insufficient resolution";
        case ErrorKind::InsufficientDecayData: return "insufficient decay data";
        case ErrorKind::Coverage: return "coverage error";
        case ErrorKind::Data: return "data error";
        case ErrorKind::Degenerate: return "degenerate region";
        case ErrorKind::InvariantViolation: return "invariant violation";
        case ErrorKind::Config: return "config error";
    }
    return "error";
}

}  // namespace caloric
