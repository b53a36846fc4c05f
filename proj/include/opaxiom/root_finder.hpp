#pragma once

#include <cstddef>
#include <functional>

#include "opaxiom/ball.hpp"
#include "opaxiom/rational.hpp"

namespace opaxiom {

/// [lo, hi] with the signs of f at both ends; f(lo) * f(hi) <= 0.
struct Bracket {
    BigRational lo;
    BigRational hi;
    int sign_lo = -1;
    int sign_hi = 1;

    BigRational width() const { return hi - lo; }
};

enum class ProbePolicy {
    /// Probes follow the interpolation step, snapped to a nearby short rational.
    Interpolating,
    /// Probes are the simplest rational in a wide window around the step.
    /// Slower, but keeps numerators and denominators small, which matters
    /// when every probe feeds a tower of exact powers.
    Simplest,
};

struct RootConfig {
    BigRational tolerance = pow2(-40);
    std::size_t max_iterations = 400;
    std::size_t max_expansions = 64;
    /// How many 4x tightenings a straddling probe gets before it counts as
    /// ambiguous.
    std::size_t max_refinements = 12;
    /// Loosest precision ever requested from f.
    BigRational probe_target = pow2(-16);
    ProbePolicy policy = ProbePolicy::Interpolating;
    /// Called once per iteration with the current bracket.
    std::function<void(const Bracket&, std::size_t)> on_iteration;
};

/// f(x) evaluated to absolute error `target`.
using RootFunction = std::function<Ball(const BigRational& x, const BigRational& target)>;

/// Sign of f(x): +1, -1, or 0 for an exact zero. Straddling values are
/// re-evaluated at 4x tighter targets; returns 2 if still unresolved.
int probe_sign(const RootFunction& f, const BigRational& x, BigRational target, const RootConfig& cfg,
               Ball* value = nullptr);

/// Bracket [lo, hi] with both end signs resolved. Throws DomainError when
/// they agree.
Bracket make_bracket(const RootFunction& f, const BigRational& lo, const BigRational& hi, const RootConfig& cfg);

/// Brent's method on exact rational probes. Returns a ball of radius at most
/// cfg.tolerance containing the root, or an exact ball when a probe lands on it.
Ball brent(const RootFunction& f, const Bracket& bracket, const RootConfig& cfg);

/// For increasing f: tries m = 1, 2, 4, ... until f(m) > target and returns
/// [last failing m (or 0), m], with signs for f - target.
Bracket expand_upper(const RootFunction& f, const BigRational& target, const RootConfig& cfg);

}  // namespace opaxiom
