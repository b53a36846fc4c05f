#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opaxiom/rational.hpp"

namespace opaxiom {

/// An operator run such as `+`, `--` or `/////`. The rank is the run length.
struct Operator {
    enum class Kind { Plus, Minus, Slash };

    Kind kind = Kind::Plus;
    unsigned rank = 1;

    constexpr Operator() = default;
    constexpr Operator(Kind k, unsigned r) : kind(k), rank(r) {}

    char symbol() const noexcept;
    std::string to_string() const;

    friend bool operator==(const Operator&, const Operator&) = default;
};

constexpr Operator plus(unsigned rank) { return {Operator::Kind::Plus, rank}; }
constexpr Operator minus(unsigned rank) { return {Operator::Kind::Minus, rank}; }
constexpr Operator slash(unsigned rank) { return {Operator::Kind::Slash, rank}; }

enum class Side : unsigned char { Left, Right };

/// Address of a subterm: the left/right choices taken from the root.
using NodePath = std::vector<Side>;

/// "root" for the empty path, otherwise a string of L/R letters.
std::string to_string(const NodePath& path);

/// A number term: the constant `1` or a bracketed binary operation.
/// Immutable; copies share structure.
class Term {
public:
    /// The leaf `1`.
    Term() = default;

    static Term leaf() { return Term(); }
    static Term node(Operator op, Term left, Term right);

    bool is_leaf() const noexcept { return node_ == nullptr; }
    const Operator& op() const;
    const Term& left() const;
    const Term& right() const;

    /// Subterm at `path`; throws std::out_of_range if the path leaves the tree.
    const Term& at(const NodePath& path) const;

    std::size_t node_count() const;
    std::size_t internal_count() const;
    std::size_t depth() const;

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct Term::Node {
    Operator op;
    Term left;
    Term right;
};

struct ParseOptions {
    std::size_t max_depth = 10'000;
    /// Longest accepted decimal literal, in digits.
    std::size_t max_literal_digits = 4'096;
};

/// Parses bracket notation. Whitespace and `#` line comments are skipped;
/// decimal literals are desugared into pure terms.
Term parse(std::string_view text, const ParseOptions& options = {});

enum class RenderStyle { Canonical, Sugared };

std::string render(const Term& term, RenderStyle style = RenderStyle::Canonical);

/// Fixed desugaring of a non-negative integer literal: `0` is `[1-1]`,
/// small values are left-nested sums `[[1+1]+1]`, larger values use a
/// binary Horner form built from `++[1+1]` and `+1`.
Term integer_term(const BigInt& n);

/// Inverse of integer_term: the literal value if `term` is exactly the
/// desugaring of some integer.
std::optional<BigInt> as_integer_literal(const Term& term);

/// Internal nodes in inorder (left subtree, node, right subtree).
std::vector<NodePath> traversal_order(const Term& term);

struct TraceEvent {
    std::size_t step = 0;
    NodePath path;
    std::string before;
    std::string after;
};

}  // namespace opaxiom
