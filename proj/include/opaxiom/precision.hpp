#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "opaxiom/ball.hpp"
#include "opaxiom/hyperop.hpp"
#include "opaxiom/term.hpp"

namespace opaxiom {

struct NumericContext {
    unsigned base = 10;
    /// Fractional digits to emit.
    std::size_t digits = 20;
    /// Extra digits of working precision beyond `digits`.
    std::size_t guard = 10;
    /// How often adaptive_render may double the guard digits.
    std::size_t max_doublings = 8;
    /// Record a TraceEvent per reduced node.
    bool trace = false;
    hyper::HyperConfig hyper;

    /// Throws std::invalid_argument unless 2 <= base <= 36.
    void validate() const;
    /// base^-(digits + guard).
    BigRational target() const;
};

/// Sign, integer digits (most significant first, no leading zeros) and
/// fractional digits of a truncated base-b expansion.
struct BasebExpansion {
    bool negative = false;
    unsigned base = 10;
    std::vector<unsigned> integer_digits{0};
    std::vector<unsigned> fractional_digits;

    /// "-" if negative, the integer digits, then "." and the fractional
    /// digits when there are any. Digits beyond 9 are A-Z.
    std::string to_string() const;
    /// The expansion read back as a rational.
    BigRational value() const;

    friend bool operator==(const BasebExpansion&, const BasebExpansion&) = default;
};

struct EvalResult {
    Ball value;
    std::vector<TraceEvent> trace;

    /// True when the value carries no error at all.
    bool is_exact() const { return value.is_exact(); }
};

/// Evaluates every node bottom-up. Ranks 1-2 are exact on exact inputs;
/// the result radius is at most ctx.target(). Errors carry the path of the
/// node that raised them.
EvalResult evaluate(const Term& term, const NumericContext& ctx);

/// Truncated expansion of `value` with ctx.digits fractional digits. Exact
/// values always succeed; approximate ones raise PrecisionError unless the
/// whole ball shares the digits.
BasebExpansion to_base_b(const EvalResult& value, const NumericContext& ctx);
BasebExpansion to_base_b(const BigRational& value, unsigned base, std::size_t digits);

/// Evaluates and renders, doubling the guard digits whenever the digits
/// cannot be certified.
BasebExpansion adaptive_render(const Term& term, const NumericContext& ctx);

struct Rendering {
    EvalResult result;
    BasebExpansion expansion;
    /// Guard digits of the evaluation that certified.
    std::size_t guard = 0;
};

/// adaptive_render, keeping the value behind the digits (and its trace when
/// ctx.trace is set).
Rendering adaptive_evaluate(const Term& term, const NumericContext& ctx);

/// One event per internal node, innermost first. Each event's `after` is
/// the whole term with the reduced nodes replaced by their values; the last
/// one is the rendered result.
std::vector<TraceEvent> trace_reduce(const Term& term, const NumericContext& ctx);

}  // namespace opaxiom
