#include "opaxiom/error.hpp"

namespace opaxiom {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::Domain: return "DomainError";
        case ErrorKind::Resource: return "ResourceError";
        case ErrorKind::Convergence: return "ConvergenceError";
        case ErrorKind::Ambiguity: return "AmbiguityError";
        case ErrorKind::Precision: return "PrecisionError";
    }
    return "Error";
}

}  // namespace opaxiom
