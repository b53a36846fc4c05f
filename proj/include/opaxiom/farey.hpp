#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "opaxiom/rational.hpp"

namespace opaxiom::farey {

/// One cell of the numerator/denominator table: top is the ⊤ value,
/// bottom the ⊥ value.
struct FareyEntry {
    std::uint64_t top = 0;
    std::uint64_t bottom = 1;

    friend bool operator==(const FareyEntry&, const FareyEntry&) = default;
};

/// 1-based (row, position). Positions in deep rows exceed 64 bits.
struct FareyIndex {
    std::uint64_t row = 1;
    BigInt position = 1;

    friend bool operator==(const FareyIndex& a, const FareyIndex& b) {
        return a.row == b.row && a.position == b.position;
    }
};

struct FareyConfig {
    /// Longest row farey_row will materialize.
    std::size_t max_row_length = (std::size_t{1} << 20) + 1;
    /// Deepest row locate will descend to.
    std::uint64_t max_depth = 1'000'000;
};

/// Row k of the table: row 1 is [0/1, 1/1]; odd positions of row k repeat
/// row k-1 and even positions are mediants of their row k-1 neighbours.
/// Each row is built with an OpenMP-parallel loop.
std::vector<FareyEntry> farey_row(unsigned k, const FareyConfig& config = {});

/// Single-threaded reference for farey_row.
std::vector<FareyEntry> farey_row_serial(unsigned k, const FareyConfig& config = {});

/// Number of entries in row k, 2^(k-1) + 1.
BigInt row_length(std::uint64_t k);

/// Entry (k, l) computed straight from the index recursion, without
/// building the row. Returned as (top, bottom).
std::pair<BigInt, BigInt> entry_at(std::uint64_t k, const BigInt& l);

/// First (row, position) at which the reduced fraction p/q in [0, 1]
/// appears. Descends the mediant tree, jumping over runs of same-side moves.
FareyIndex locate(const BigInt& p, const BigInt& q, const FareyConfig& config = {});

/// Rational with the smallest denominator (then smallest magnitude) in the
/// closed interval [lo, hi].
BigRational simplest_between(const BigRational& lo, const BigRational& hi);

}  // namespace opaxiom::farey
