#include "opaxiom/hyperop.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "opaxiom/error.hpp"
#include "opaxiom/farey.hpp"

namespace opaxiom::hyper {

namespace {

constexpr int kMaxAttempts = 10;
constexpr unsigned long kMaxSteps = 1UL << 20;
// A super-log probe at height n + p/q costs a super-root of order q of a
// tower of height p, so the search gives up rather than chase ever finer
// fractions or root huge towers.
constexpr unsigned long kMaxProbeDenominator = 1UL << 5;
constexpr double kMaxProbeTowerLog2 = 4096;

// Thrown by a rank-3 step that overflowed while a ceiling is in force.
struct Overflowed {};

std::string rank_str(unsigned r) { return std::to_string(r); }

series::SeriesConfig series_config(const HyperConfig& cfg) {
    series::SeriesConfig s = cfg.series;
    s.target = cfg.target;
    s.max_log2 = std::min(s.max_log2, cfg.blowup_log2);
    return s;
}

void check_blowup(const Ball& v, const HyperConfig& cfg) {
    const BigRational hi = v.upper();
    if (hi.sign() > 0 && approx_log2(hi) > static_cast<double>(cfg.blowup_log2)) {
        throw ResourceError("intermediate value exceeds 2^" + std::to_string(cfg.blowup_log2));
    }
}

BigRational exact_height(const Ball& h, unsigned rank) {
    if (!h.is_exact()) {
        throw DomainError("rank-" + rank_str(rank) + " height must be an exact rational, got " + h.to_string());
    }
    return h.center();
}

// Bases and super-root arguments live in [1, inf).
void require_at_least_one(const Ball& a, const std::string& what) {
    const BigRational one(1);
    if (a.upper() < one) throw DomainError(what + " must be >= 1, got " + a.to_string());
    if (a.lower() < one) throw PrecisionError(what + " " + a.to_string() + " is not certified >= 1");
}

// Error share of a level with `above` further levels applied on top of it:
// half for the outermost, a quarter for the next, and so on.
BigRational level_target(const BigRational& budget, unsigned long above) {
    return budget * pow2(-static_cast<long>(std::min(above, 60UL) + 1));
}

void verify_split(const BigInt& p, const BigInt& q) {
    const farey::FareyIndex idx = farey::locate(p, q);
    const auto [top, bottom] = farey::entry_at(idx.row, idx.position);
    if (top != p || bottom != q) {
        throw std::logic_error("farey table disagrees with height " + p.get_str() + "/" + q.get_str());
    }
}

Ball forward_impl(unsigned r, const Ball& a, const BigRational& b, const HyperConfig& cfg,
                  const BigRational* ceiling);
Ball inverse_minus_impl(unsigned r, const Ball& a, const BigRational& b, const HyperConfig& cfg);

// One unrolled application: a op_{r-1} v.
Ball step(unsigned r, const Ball& a, const Ball& v, const HyperConfig& cfg, const BigRational* ceiling) {
    if (r - 1 == 3) {
        try {
            return series::pow(a, v, series_config(cfg));
        } catch (const ResourceError&) {
            if (ceiling) throw Overflowed{};
            throw;
        }
    }
    return forward_impl(r - 1, a, exact_height(v, r - 1), cfg, ceiling);
}

Ball forward_impl(unsigned r, const Ball& a, const BigRational& b, const HyperConfig& cfg,
                  const BigRational* ceiling) {
    if (b.sign() < 0) throw DomainError("rank-" + rank_str(r) + " height must be >= 0, got " + brief(b));
    if (b.is_zero()) return Ball(1);
    require_at_least_one(a, "rank-" + rank_str(r) + " base");
    if (a.is_exact() && a.center() == BigRational(1)) return Ball(1);
    if (b == BigRational(1)) return a;

    const BigInt n = floor(b);
    const BigRational frac = b - BigRational(n);
    const BigInt count = frac.is_zero() ? BigInt(n - 1) : n;
    if (count > kMaxSteps) throw ResourceError("height " + brief(b) + " needs too many unrolled steps");
    const unsigned long steps = count.get_ui();
    if (!frac.is_zero() && cfg.verify_farey) verify_split(frac.num(), frac.den());

    // Levels below the top are increasing in this unrolling, so once one
    // passes the ceiling, so does the result.
    const Ball above_ceiling = ceiling ? Ball(*ceiling * BigRational(2)) : Ball();

    BigRational slack(1);
    BigRational previous;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const BigRational budget = cfg.target * slack;
        try {
            Ball v = frac.is_zero() ? a : inverse_minus_impl(r, forward_impl(r, a, BigRational(frac.num()),
                                                                             cfg.with_target(level_target(budget, steps + 1)), nullptr),
                                                             BigRational(frac.den()),
                                                             cfg.with_target(level_target(budget, steps)));
            for (unsigned long k = 1; k <= steps; ++k) {
                if (ceiling && v.lower() > *ceiling) return above_ceiling;
                v = step(r, a, v, cfg.with_target(level_target(budget, steps - k)), ceiling);
                check_blowup(v, cfg);
            }
            if (ceiling && v.lower() > *ceiling) return above_ceiling;
            if (v.radius() <= cfg.target) return v;
            // Inexact bases carry error no budget can remove; stop once
            // tightening stops paying off.
            if (!a.is_exact() && attempt > 0 && v.radius() * BigRational(2) > previous) return v;
            previous = v.radius();
            slack *= pow2(-(floor_log2(v.radius() / cfg.target) + 2));
        } catch (const Overflowed&) {
            if (approx_log2(*ceiling) + 2 >= static_cast<double>(cfg.blowup_log2)) {
                throw ResourceError("intermediate value exceeds 2^" + std::to_string(cfg.blowup_log2));
            }
            return above_ceiling;
        }
    }
    throw PrecisionError("rank-" + rank_str(r) + " power did not reach the requested precision");
}

RootConfig root_config(const HyperConfig& cfg, ProbePolicy policy) {
    RootConfig rc = cfg.root;
    rc.tolerance = cfg.target / BigRational(2);
    rc.policy = policy;
    return rc;
}

// Brent at least halves the bracket every two iterations, so grant that many
// on top of the configured budget: tiny tolerances deep in a tower are
// legitimate, not a sign of stalling.
Bracket budgeted(const Bracket& br, RootConfig& rc) {
    const long bits = floor_log2(br.width() / rc.tolerance) + 1;
    if (bits > 0) rc.max_iterations += 2 * static_cast<std::size_t>(bits);
    return br;
}

// x >= 1 with forward(r, x, b) = target.
Ball solve_minus(unsigned r, const BigRational& target, const BigRational& b, const HyperConfig& cfg) {
    const BigRational one(1);
    if (target == one) return Ball(1);
    const BigRational ceiling = target * BigRational(2) + one;
    const RootFunction f = [&](const BigRational& x, const BigRational& t) {
        return forward_impl(r, Ball(x), b, cfg.with_target(t), &ceiling) - Ball(target);
    };
    // Above rank 4 the probes become heights one level down, so keep them short.
    const RootConfig rc = root_config(cfg, r > 4 ? ProbePolicy::Simplest : ProbePolicy::Interpolating);

    // forward(r, 1, b) = 1 < target and forward(r, target, b) >= target.
    // Squaring from 2 tightens the upper end when the target is large.
    BigRational lo = one;
    BigRational hi = target;
    bool hi_checked = false;
    for (BigRational m(2); m < target; m = m * m) {
        const int s = probe_sign(f, m, rc.probe_target, rc);
        if (s == 0) return Ball(m);
        if (s == 2) {
            // m is within rounding of the root, so its square lies above it.
            hi = std::min(m * m, target);
            break;
        }
        if (s > 0) {
            hi = m;
            hi_checked = true;
            break;
        }
        lo = m;
    }
    if (!hi_checked) {
        const int s = probe_sign(f, hi, rc.probe_target, rc);
        if (s == 0) return Ball(hi);
        if (s != 1) throw AmbiguityError("cannot bracket the super-root of " + brief(target));
    }
    RootConfig budget = rc;
    return brent(f, budgeted(Bracket{lo, hi, -1, 1}, budget), budget);
}

Ball inverse_minus_impl(unsigned r, const Ball& a, const BigRational& b, const HyperConfig& cfg) {
    if (b.sign() <= 0) throw DomainError("super-root order must be > 0, got " + brief(b));
    if (a.upper() < BigRational(1)) throw DomainError("super-root argument must be >= 1, got " + a.to_string());
    if (a.is_exact() && a.center() == BigRational(1)) return Ball(1);
    if (b == BigRational(1)) return a;
    require_at_least_one(a, "super-root argument");

    if (b < BigRational(1)) {
        // forward(r, x, p/q) = a  <=>  forward(r, x, p) = forward(r, a, q).
        const Ball y = forward_impl(r, a, BigRational(b.den()), cfg.with_target(cfg.target / BigRational(4)), nullptr);
        if (b.num() == 1) return y;
        return inverse_minus_impl(r, y, BigRational(b.num()), cfg.with_target(cfg.target / BigRational(2)));
    }
    if (a.is_exact()) return solve_minus(r, a.center(), b, cfg);
    // The root is increasing in the target, so the end points bound it.
    const HyperConfig half = cfg.with_target(cfg.target / BigRational(2));
    return hull(solve_minus(r, a.lower(), b, half), solve_minus(r, a.upper(), b, half));
}

// x >= 0 with forward(r, base, x) = target.
Ball solve_slash(unsigned r, const BigRational& target, const BigRational& base, const HyperConfig& cfg) {
    const BigRational one(1);
    if (target == one) return Ball(0);
    if (target == base) return Ball(1);
    const BigRational ceiling = target * BigRational(2) + one;
    const RootFunction g = [&](const BigRational& x, const BigRational& t) {
        if (x.den() > kMaxProbeDenominator) {
            throw ResourceError("super-log of " + brief(target) + " needs heights finer than 1/" +
                                std::to_string(kMaxProbeDenominator));
        }
        const BigRational frac = x - BigRational(floor(x));
        if (!frac.is_zero()) {
            const Ball tower = forward_impl(r, Ball(base), BigRational(frac.num()), cfg.with_target(BigRational(1)), nullptr);
            if (approx_log2(tower.upper()) > kMaxProbeTowerLog2) {
                throw ResourceError("super-log probe at height " + brief(x) + " needs a tower above 2^" +
                                    std::to_string(static_cast<long>(kMaxProbeTowerLog2)));
            }
        }
        return forward_impl(r, Ball(base), x, cfg.with_target(t), &ceiling);
    };
    const RootConfig rc = root_config(cfg, ProbePolicy::Simplest);
    Bracket br = expand_upper(g, target, rc);
    if (br.sign_lo == 0) return Ball(br.lo);
    if (br.sign_hi == 0) return Ball(br.hi);
    const RootFunction f = [&](const BigRational& x, const BigRational& t) { return g(x, t) - Ball(target); };
    // Whole heights first: they are cheap, often exact, and keep fractional
    // probes (whose numerators become tower heights) out of wide brackets.
    while (br.hi - br.lo > one) {
        const BigRational m(floor((br.lo + br.hi) / BigRational(2)));
        const int s = probe_sign(f, m, rc.probe_target, rc);
        if (s == 0) return Ball(m);
        if (s == 2) break;
        (s < 0 ? br.lo : br.hi) = m;
    }
    RootConfig budget = rc;
    return brent(f, budgeted(br, budget), budget);
}

std::vector<BigRational> ends(const Ball& x) {
    if (x.is_exact()) return {x.center()};
    return {x.lower(), x.upper()};
}

void require_rank(unsigned rank) {
    if (rank < 4) throw std::invalid_argument("hyperoperations start at rank 4, got " + rank_str(rank));
}

}  // namespace

Ball hyper_forward(unsigned rank, const Ball& a, const BigRational& b, const HyperConfig& cfg) {
    require_rank(rank);
    return forward_impl(rank, a, b, cfg, nullptr);
}

Ball hyper_inverse_minus(unsigned rank, const Ball& a, const BigRational& b, const HyperConfig& cfg) {
    require_rank(rank);
    return inverse_minus_impl(rank, a, b, cfg);
}

Ball hyper_inverse_slash(unsigned rank, const Ball& a, const Ball& b, const HyperConfig& cfg) {
    require_rank(rank);
    const BigRational one(1);
    if (a.upper() < one) throw DomainError("super-log argument must be >= 1, got " + a.to_string());
    if (b.upper() <= one) throw DomainError("super-log base must be > 1, got " + b.to_string());
    if (a.is_exact() && a.center() == one) return Ball(0);
    if (a.is_exact() && b.is_exact() && a.center() == b.center()) return Ball(1);
    if (a.lower() < one) throw PrecisionError("super-log argument " + a.to_string() + " is not certified >= 1");
    if (b.lower() <= one) throw PrecisionError("super-log base " + b.to_string() + " is not certified > 1");

    const auto as = ends(a);
    const auto bs = ends(b);
    const HyperConfig part = as.size() * bs.size() > 1 ? cfg.with_target(cfg.target / BigRational(2)) : cfg;
    std::optional<Ball> out;
    for (const auto& x : as) {
        for (const auto& y : bs) {
            Ball v = solve_slash(rank, x, y, part);
            out = out ? hull(*out, v) : v;
        }
    }
    return *out;
}

Ball evaluate(const HyperRequest& request, const HyperConfig& cfg) {
    switch (request.kind) {
        case HyperKind::Forward: return hyper_forward(request.rank, request.a, exact_height(request.b, request.rank), cfg);
        case HyperKind::InverseMinus:
            return hyper_inverse_minus(request.rank, request.a, exact_height(request.b, request.rank), cfg);
        case HyperKind::InverseSlash: return hyper_inverse_slash(request.rank, request.a, request.b, cfg);
    }
    throw std::invalid_argument("unknown hyperoperation kind");
}

Ball apply(const Operator& op, const Ball& a, const Ball& b, const HyperConfig& cfg) {
    using Kind = Operator::Kind;
    if (op.rank == 0) throw std::invalid_argument("operator rank must be >= 1");
    if (op.rank <= 2) {
        if (a.is_exact() && b.is_exact()) return Ball(low_op(op, a.center(), b.center()));
        const long bits = bits_for(cfg.target) + 8;
        if (op.rank == 1) return (op.kind == Kind::Plus ? a + b : a - b).rounded(bits);
        return (op.kind == Kind::Plus ? a * b : a / b).rounded(bits);
    }
    if (op.rank == 3) {
        const series::SeriesConfig s = series_config(cfg);
        switch (op.kind) {
            case Kind::Plus: return series::pow(a, b, s);
            case Kind::Minus: return series::root(a, b, s);
            case Kind::Slash: return series::log(a, b, s);
        }
    }
    return evaluate(HyperRequest{op.rank,
                                 op.kind == Kind::Plus    ? HyperKind::Forward
                                 : op.kind == Kind::Minus ? HyperKind::InverseMinus
                                                          : HyperKind::InverseSlash,
                                 a, b},
                    cfg);
}

}  // namespace opaxiom::hyper
