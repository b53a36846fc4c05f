#pragma once

#include "opaxiom/ball.hpp"
#include "opaxiom/rational.hpp"
#include "opaxiom/root_finder.hpp"
#include "opaxiom/series.hpp"
#include "opaxiom/term.hpp"

namespace opaxiom::hyper {

struct HyperConfig {
    /// Absolute error allowed in the result, beyond what the inputs carry.
    BigRational target = pow2(-64);
    series::SeriesConfig series;
    /// Iteration caps and probe settings; tolerance and policy are set per solve.
    RootConfig root;
    /// Any intermediate above 2^blowup_log2 raises ResourceError.
    long blowup_log2 = 1L << 20;
    /// Cross-check every fractional height against the Farey table.
    bool verify_farey = false;

    HyperConfig with_target(BigRational t) const {
        HyperConfig c = *this;
        c.target = std::move(t);
        return c;
    }
};

enum class HyperKind { Forward, InverseMinus, InverseSlash };

struct HyperRequest {
    unsigned rank = 4;
    HyperKind kind = HyperKind::Forward;
    Ball a;
    Ball b;
};

/// a with b stacked by rank r (r >= 4): b = 0 gives 1, integer b = n unrolls
/// into n - 1 rank r-1 steps, and b = n + p/q starts the unrolling from
/// hyper_inverse_minus(r, hyper_forward(r, a, p), q).
/// Needs a >= 1 and b >= 0; heights must be exact rationals.
Ball hyper_forward(unsigned rank, const Ball& a, const BigRational& b, const HyperConfig& cfg);

/// The super-root family: x with hyper_forward(rank, x, b) = a, for a >= 1, b > 0.
Ball hyper_inverse_minus(unsigned rank, const Ball& a, const BigRational& b, const HyperConfig& cfg);

/// The super-logarithm family: x >= 0 with hyper_forward(rank, b, x) = a,
/// for a >= 1, b > 1.
Ball hyper_inverse_slash(unsigned rank, const Ball& a, const Ball& b, const HyperConfig& cfg);

Ball evaluate(const HyperRequest& request, const HyperConfig& cfg);

/// Any operator of any rank on two values. Ranks 1 and 2 stay exact on exact
/// inputs, rank 3 goes through the series, rank 4 and up through the above.
Ball apply(const Operator& op, const Ball& a, const Ball& b, const HyperConfig& cfg);

}  // namespace opaxiom::hyper
