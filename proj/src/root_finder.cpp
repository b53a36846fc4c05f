#include "opaxiom/root_finder.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "opaxiom/error.hpp"
#include "opaxiom/farey.hpp"

namespace opaxiom {

namespace {

// Sign of f(x) at base * 4^-level, raising level (never lowering it) while
// the value straddles zero.
int resolve(const RootFunction& f, const BigRational& x, const BigRational& base, std::size_t& level,
            const RootConfig& cfg, Ball* value) {
    for (;;) {
        const BigRational target = base * pow2(-2 * static_cast<long>(level));
        try {
            const Ball v = f(x, target);
            if (value) *value = v;
            if (v.is_exact() && v.center().is_zero()) return 0;
            if (v.lower().sign() > 0) return 1;
            if (v.upper().sign() < 0) return -1;
        } catch (const PrecisionError&) {
            // An intermediate straddled a singular point; tighten like any
            // other unresolved probe.
        }
        if (level >= cfg.max_refinements) return 2;
        ++level;
    }
}

// Interpolation value with the known sign, even if the center disagrees.
BigRational signed_value(const Ball& v, int sign) {
    if (v.center().sign() == sign) return v.center();
    if (!v.radius().is_zero()) return BigRational(sign) * v.radius();
    return BigRational(sign);
}

BigRational clamp(const BigRational& x, const BigRational& lo, const BigRational& hi) {
    if (x < lo) return lo;
    if (x > hi) return hi;
    return x;
}

}  // namespace

int probe_sign(const RootFunction& f, const BigRational& x, BigRational target, const RootConfig& cfg, Ball* value) {
    std::size_t level = 0;
    return resolve(f, x, target, level, cfg, value);
}

Bracket make_bracket(const RootFunction& f, const BigRational& lo, const BigRational& hi, const RootConfig& cfg) {
    if (hi < lo) throw std::invalid_argument("make_bracket: lo > hi");
    Bracket br{lo, hi, probe_sign(f, lo, cfg.probe_target, cfg), probe_sign(f, hi, cfg.probe_target, cfg)};
    if (br.sign_lo == 2 || br.sign_hi == 2) throw AmbiguityError("cannot resolve the sign of f at a bracket end");
    if (br.sign_lo * br.sign_hi > 0) {
        throw DomainError("f has the same sign at " + brief(lo) + " and " + brief(hi));
    }
    return br;
}

Ball brent(const RootFunction& f, const Bracket& bracket, const RootConfig& cfg) {
    if (bracket.hi < bracket.lo) throw std::invalid_argument("brent: lo > hi");
    if (cfg.tolerance.sign() <= 0) throw std::invalid_argument("brent: tolerance must be positive");
    if (bracket.sign_lo == 0) return Ball(bracket.lo);
    if (bracket.sign_hi == 0) return Ball(bracket.hi);
    if (bracket.sign_lo * bracket.sign_hi > 0) throw DomainError("bracket does not change sign");

    const BigRational& tol = cfg.tolerance;
    const BigRational tol1 = tol / BigRational(2);
    const BigRational two(2);
    const BigRational w0 = bracket.width();
    std::size_t level = 0;

    auto first_value = [&](const BigRational& x, int sign) {
        try {
            return signed_value(f(x, cfg.probe_target), sign);
        } catch (const PrecisionError&) {
            return BigRational(sign);
        }
    };

    // b is the best estimate, c the contrapoint, a the previous b.
    BigRational a = bracket.lo, b = bracket.hi, c;
    BigRational fa = first_value(a, bracket.sign_lo), fb = first_value(b, bracket.sign_hi), fc;
    int sa = bracket.sign_lo, sb = bracket.sign_hi, sc = 0;
    c = a;
    fc = fa;
    sc = sa;
    BigRational d = b - a, e = d;

    for (std::size_t iter = 1;; ++iter) {
        if (sb == sc) {
            c = a;
            fc = fa;
            sc = sa;
            d = e = b - a;
        }
        if (fc.abs() < fb.abs()) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
            std::swap(sb, sc);
            sa = sc;
        }

        const bool b_low = b < c;
        const BigRational lo = b_low ? b : c;
        const BigRational hi = b_low ? c : b;
        const BigRational w = hi - lo;
        if (cfg.on_iteration) cfg.on_iteration(Bracket{lo, hi, b_low ? sb : sc, b_low ? sc : sb}, iter);
        if (w <= two * tol) return Ball((lo + hi) / two, w / two);
        if (iter > cfg.max_iterations) {
            throw ConvergenceError("root finder did not converge in " + std::to_string(cfg.max_iterations) +
                                   " iterations (bracket width " + Ball(w).to_string() + ")");
        }

        const BigRational xm = (c - b) / two;
        if (e.abs() >= tol1 && fa.abs() > fb.abs()) {
            // Inverse quadratic interpolation, or secant when only two points.
            const BigRational s = fb / fa;
            BigRational p, q;
            if (a == c) {
                p = two * xm * s;
                q = BigRational(1) - s;
            } else {
                const BigRational qq = fa / fc;
                const BigRational r = fb / fc;
                p = s * (two * xm * qq * (qq - r) - (b - a) * (r - BigRational(1)));
                q = (qq - BigRational(1)) * (r - BigRational(1)) * (s - BigRational(1));
            }
            if (p.sign() > 0) q = -q;
            p = p.abs();
            const BigRational lim1 = BigRational(3) * xm * q - (tol1 * q).abs();
            const BigRational lim2 = (e * q).abs();
            if (two * p < std::min(lim1, lim2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        const BigRational cand = b + (d.abs() > tol1 ? d : (xm.sign() > 0 ? tol1 : -tol1));

        // Keep the probe inside the bracket and inside [hi - B, lo + B]: that
        // makes the width at least halve every two iterations.
        const BigRational bound = w0 * pow2(-static_cast<long>(iter / 2));
        const bool simplest = cfg.policy == ProbePolicy::Simplest;
        const BigRational margin = simplest ? w / BigRational(8) : std::min(w / BigRational(8), tol1 / two);
        const BigRational rlo = std::max(lo + margin, hi - bound);
        const BigRational rhi = std::min(hi - margin, lo + bound);
        const BigRational x0 = clamp(cand, rlo, rhi);
        const BigRational step = (x0 - b).abs();
        const BigRational delta =
            simplest ? std::max(step / BigRational(4), w / BigRational(8)) : std::max(step / BigRational(16), tol / BigRational(8));
        const BigRational x = farey::simplest_between(std::max(rlo, x0 - delta), std::min(rhi, x0 + delta));
        if (x0 != cand) e = x - b;
        d = x - b;

        a = b;
        fa = fb;
        sa = sb;

        const BigRational base = std::min(cfg.probe_target, w / BigRational(64));
        Ball v;
        int s = resolve(f, x, base, level, cfg, &v);
        if (s == 0) return Ball(x);
        if (s == 2) {
            // The probe sits too close to the root to resolve at bracket
            // scale. Retry at the precision that separates f from zero half a
            // tolerance away (judged by the secant slope); failing that,
            // bracket the root directly with two probes at that distance.
            BigRational fine = tol1 * (fc - fa).abs() / ((c - a).abs() * BigRational(16));
            if (fine.is_zero() || fine > base) fine = base;
            std::size_t l1 = 0;
            s = resolve(f, x, fine, l1, cfg, &v);
            if (s == 0) return Ball(x);
            if (s == 2) {
                const int s_lo = b_low ? sb : sc;
                const BigRational xl = std::max(lo, x - tol1);
                const BigRational xr = std::min(hi, x + tol1);
                std::size_t l2 = 0;
                const int sl = xl == lo ? s_lo : resolve(f, xl, fine, l2, cfg, nullptr);
                l2 = 0;
                const int sr = xr == hi ? -s_lo : resolve(f, xr, fine, l2, cfg, nullptr);
                if (sl == 0) return Ball(xl);
                if (sr == 0) return Ball(xr);
                if (sl == s_lo && sr == -s_lo) return Ball((xl + xr) / two, (xr - xl) / two);
                throw AmbiguityError("cannot resolve the sign of f near " + Ball(x).to_string());
            }
        }
        b = x;
        sb = s;
        fb = signed_value(v, s);
    }
}

Bracket expand_upper(const RootFunction& f, const BigRational& target, const RootConfig& cfg) {
    const RootFunction g = [&](const BigRational& x, const BigRational& t) { return f(x, t) - Ball(target); };
    BigRational lower(0);
    int sign_lower = probe_sign(g, lower, cfg.probe_target, cfg);
    if (sign_lower == 2) throw AmbiguityError("cannot compare f(0) with the target");
    if (sign_lower > 0) throw DomainError("target " + brief(target) + " lies below f(0)");
    if (sign_lower == 0) return Bracket{lower, lower, 0, 0};
    BigRational m(1);
    for (std::size_t i = 0; i < cfg.max_expansions; ++i) {
        const int s = probe_sign(g, m, cfg.probe_target, cfg);
        if (s == 2) throw AmbiguityError("cannot compare f(" + brief(m) + ") with the target");
        if (s == 0) return Bracket{m, m, 0, 0};
        if (s > 0) return Bracket{lower, m, sign_lower, 1};
        lower = m;
        m *= BigRational(2);
    }
    throw ConvergenceError("no upper bracket below " + brief(lower) + " after " +
                           std::to_string(cfg.max_expansions) + " expansions");
}

}  // namespace opaxiom
