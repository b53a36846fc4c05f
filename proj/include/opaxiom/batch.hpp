#pragma once

#include <string>
#include <vector>

#include "opaxiom/error.hpp"
#include "opaxiom/precision.hpp"
#include "opaxiom/term.hpp"

namespace opaxiom {

/// Rendered expansion of one term, or the error it raised.
struct BatchResult {
    bool ok = false;
    std::string text;
    bool exact = false;
    BigRational radius;
    ErrorKind kind = ErrorKind::Domain;
    std::string message;
    std::string path;

    friend bool operator==(const BatchResult&, const BatchResult&) = default;
};

/// adaptive_render on every term, spread over OpenMP threads. Results are in
/// input order and identical to the serial version.
std::vector<BatchResult> evaluate_batch(const std::vector<Term>& terms, const NumericContext& ctx);

/// Reference implementation: one term after another.
std::vector<BatchResult> evaluate_batch_serial(const std::vector<Term>& terms, const NumericContext& ctx);

}  // namespace opaxiom
