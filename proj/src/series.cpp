#include "opaxiom/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "opaxiom/error.hpp"

namespace opaxiom::series {

namespace {

constexpr int kMaxAttempts = 8;
constexpr long kReductionBits = 8;

// Round the final center onto a grid a little finer than the target.
Ball finish(const Ball& b, const BigRational& target) { return b.rounded(bits_for(target) + 4); }

// value / 2^prec, off by at most err / 2^prec. The series below run on
// these scaled integers; each truncating step costs at most an ulp or two.
struct Fixed {
    BigInt value;
    BigInt err;
};

Ball to_ball(const Fixed& f, long prec) {
    return Ball(BigRational(f.value) * pow2(-prec), BigRational(f.err) * pow2(-prec));
}

// Nearest integer to x * 2^bits.
BigInt grid_int(const BigRational& x, long bits) { return (round_to_grid(x, bits) * pow2(bits)).num(); }

long guard_bits(long p) { return 12 + floor_log2(BigRational(std::max(p, 2L))); }

void check_terms(std::size_t n, std::size_t max_terms, const char* what) {
    if (n > max_terms) throw ResourceError(std::string(what) + " series exceeded " + std::to_string(max_terms) + " terms");
}

// sum x^n / n! with x = X / 2^prec and |x| <= 2^-8. A term carries at most
// 2 + err/256 < 3 ulps; the tail past a zero term is below 3 ulps too.
Fixed exp_taylor(const BigInt& x, long prec, std::size_t max_terms) {
    BigInt term = BigInt(1) << static_cast<mp_bitcnt_t>(prec);
    Fixed s{term, 0};
    for (unsigned long n = 1;; ++n) {
        check_terms(n, max_terms, "exp");
        term *= x;
        mpz_tdiv_q_2exp(term.get_mpz_t(), term.get_mpz_t(), static_cast<mp_bitcnt_t>(prec));
        mpz_tdiv_q_ui(term.get_mpz_t(), term.get_mpz_t(), n);
        s.value += term;
        s.err += 3;
        if (term == 0) break;
    }
    s.err += ::abs(term) + 3;
    return s;
}

// (v / 2^prec)^2 at the same scale.
Fixed square(const Fixed& f, long prec) {
    Fixed out;
    out.value = f.value * f.value;
    mpz_tdiv_q_2exp(out.value.get_mpz_t(), out.value.get_mpz_t(), static_cast<mp_bitcnt_t>(prec));
    BigInt spread = 2 * ::abs(f.value) * f.err + f.err * f.err;
    mpz_cdiv_q_2exp(spread.get_mpz_t(), spread.get_mpz_t(), static_cast<mp_bitcnt_t>(prec));
    out.err = spread + 1;
    return out;
}

// 2 atanh(b) = 2 sum b^(2n+1)/(2n+1) with b = B / 2^bbits, |b| <= 1/5,
// bbits <= prec.
Fixed atanh2(const BigInt& b, long bbits, long prec, std::size_t max_terms) {
    BigInt pw = b << static_cast<mp_bitcnt_t>(prec - bbits);
    const BigInt b2 = b * b;
    Fixed s{pw, 0};
    for (unsigned long n = 1;; ++n) {
        check_terms(n, max_terms, "ln");
        pw *= b2;
        mpz_tdiv_q_2exp(pw.get_mpz_t(), pw.get_mpz_t(), static_cast<mp_bitcnt_t>(2 * bbits));
        BigInt term;
        mpz_tdiv_q_ui(term.get_mpz_t(), pw.get_mpz_t(), 2 * n + 1);
        s.value += term;
        s.err += 2;
        if (pw == 0) break;
    }
    s.err += ::abs(pw) + 2;
    s.value *= 2;
    s.err *= 2;
    return s;
}

// atanh(1/k) = sum 1/((2n+1) k^(2n+1)).
Fixed acoth(unsigned long k, long prec, std::size_t max_terms) {
    BigInt pw = BigInt(1) << static_cast<mp_bitcnt_t>(prec);
    mpz_tdiv_q_ui(pw.get_mpz_t(), pw.get_mpz_t(), k);
    Fixed s{pw, 1};
    for (unsigned long n = 1;; ++n) {
        check_terms(n, max_terms, "ln");
        mpz_tdiv_q_ui(pw.get_mpz_t(), pw.get_mpz_t(), k * k);
        BigInt term;
        mpz_tdiv_q_ui(term.get_mpz_t(), pw.get_mpz_t(), 2 * n + 1);
        s.value += term;
        s.err += 2;
        if (pw == 0) break;
    }
    s.err += ::abs(pw) + 2;
    return s;
}

// ln 2 = 18 atanh(1/26) - 2 atanh(1/4801) + 8 atanh(1/8749).
Fixed ln2(long prec, std::size_t max_terms) {
    const Fixed a = acoth(26, prec, max_terms);
    const Fixed b = acoth(4801, prec, max_terms);
    const Fixed c = acoth(8749, prec, max_terms);
    return Fixed{18 * a.value - 2 * b.value + 8 * c.value, 18 * a.err + 2 * b.err + 8 * c.err};
}

Ball exp_point(const BigRational& a, const SeriesConfig& cfg) {
    if (a.is_zero()) return Ball(1);
    const double est = a.to_double() * 1.4426950408889634;
    if (!(est < static_cast<double>(cfg.max_log2))) {
        throw ResourceError("exp(" + brief(a) + ") exceeds 2^" + std::to_string(cfg.max_log2));
    }
    const long k = std::max(0L, floor_log2(a.abs()) + 1 + kReductionBits);
    const BigRational x = a * pow2(-k);
    long p = bits_for(cfg.target) + std::max(0L, static_cast<long>(std::ceil(est))) + k + 8;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const long prec = p + guard_bits(p);
        // Rounding x costs half an ulp, doubled at most by the slope of e^t.
        Fixed s = exp_taylor(grid_int(x, prec), prec, cfg.max_terms);
        s.err += 1;
        for (long i = 0; i < k; ++i) s = square(s, prec);
        Ball out = finish(to_ball(s, prec), cfg.target);
        if (out.radius() <= cfg.target) return out;
        p += std::max(8L, floor_log2(out.radius() / cfg.target) + 8);
    }
    throw PrecisionError("exp(" + brief(a) + ") did not reach the requested precision");
}

Ball ln_point(const BigRational& a, const SeriesConfig& cfg) {
    if (a.sign() <= 0) throw DomainError("ln of non-positive value " + brief(a));
    if (a == BigRational(1)) return Ball(0);
    long e = floor_log2(a);
    BigRational m = a * pow2(-e);
    if (m > BigRational(4, 3)) {
        m = m * pow2(-1);
        ++e;
    }
    const BigRational b = (m - BigRational(1)) / (m + BigRational(1));
    const long ebits = e == 0 ? 0 : floor_log2(BigRational(std::labs(e))) + 1;
    long p = bits_for(cfg.target) + 4 + ebits;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const long prec = p + guard_bits(p);
        // Rounding b costs half an ulp, tripled at most by the slope of
        // 2 atanh on |b| <= 1/5.
        Fixed s = atanh2(grid_int(b, prec), prec, prec, cfg.max_terms);
        s.err += 2;
        if (e != 0) {
            const Fixed l = ln2(prec, cfg.max_terms);
            s.value += e * l.value;
            s.err += std::labs(e) * l.err;
        }
        Ball out = finish(to_ball(s, prec), cfg.target);
        if (out.radius() <= cfg.target) return out;
        p += std::max(8L, floor_log2(out.radius() / cfg.target) + 8);
    }
    throw PrecisionError("ln(" + brief(a) + ") did not reach the requested precision");
}

bool is_odd(const BigInt& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }

BigRational exact_int_pow(const BigRational& a, const BigInt& n, const SeriesConfig& cfg) {
    if (a.is_zero()) {
        if (n <= 0) throw DomainError("0 raised to a non-positive power");
        return BigRational(0);
    }
    const BigInt mag = ::abs(n);
    const double bits = std::fabs(approx_log2(a)) * mag.get_d();
    if (!mag.fits_ulong_p() || bits > static_cast<double>(cfg.max_log2)) {
        throw ResourceError("power " + brief(a) + "^" + brief(BigRational(n)) + " exceeds 2^" + std::to_string(cfg.max_log2));
    }
    const unsigned long e = mag.get_ui();
    BigRational r = BigRational::from_reduced(ipow(a.num(), e), ipow(a.den(), e));
    return n < 0 ? r.reciprocal() : r;
}

// Exact q-th root of a positive rational, if there is one.
std::optional<BigRational> exact_root(const BigRational& a, const BigInt& q) {
    if (!q.fits_ulong_p() || q > 4096) return std::nullopt;
    const unsigned long k = q.get_ui();
    BigInt rn, rd;
    if (mpz_root(rn.get_mpz_t(), a.num().get_mpz_t(), k) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), a.den().get_mpz_t(), k) == 0) return std::nullopt;
    return BigRational::from_reduced(rn, rd);
}

Ball exp_ball(const Ball& y, const SeriesConfig& cfg) {
    if (y.is_exact()) return exp_point(y.center(), cfg);
    const SeriesConfig half = cfg.with_target(cfg.target / BigRational(2));
    return finish(hull(exp_point(y.lower(), half), exp_point(y.upper(), half)), cfg.target);
}

Ball pow_point(const BigRational& a, const BigRational& b, const SeriesConfig& cfg) {
    if (b.is_zero()) {
        if (a.is_zero()) throw DomainError("0 raised to a non-positive power");
        return Ball(1);
    }
    if (a.is_zero()) {
        if (b.sign() < 0) throw DomainError("0 raised to a non-positive power");
        return Ball(0);
    }
    if (a == BigRational(1)) return Ball(1);
    if (b == BigRational(1)) return Ball(a);
    if (b.is_integer()) return Ball(exact_int_pow(a, b.num(), cfg));
    if (a.sign() < 0) {
        throw DomainError("negative base " + brief(a) + " needs an integer exponent, got " + brief(b));
    }
    if (auto r = exact_root(a, b.den())) return Ball(exact_int_pow(*r, b.num(), cfg));

    const double est = b.to_double() * approx_log2(a);
    if (est > static_cast<double>(cfg.max_log2)) {
        throw ResourceError("power " + brief(a) + "^" + brief(b) + " exceeds 2^" + std::to_string(cfg.max_log2));
    }
    const long mag_bits = std::max(0L, static_cast<long>(std::ceil(est)));
    const long bscale = std::max(0L, floor_log2(b.abs()) + 1);
    long slack = 4;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const BigRational ty = pow2(-(bits_for(cfg.target) + mag_bits + slack));
        const Ball lna = ln_point(a, cfg.with_target(ty * pow2(-bscale)));
        const Ball y = lna * Ball(b);
        Ball out = exp_ball(y, cfg.with_target(cfg.target / BigRational(2)));
        if (out.radius() <= cfg.target) return out;
        slack += std::max(4L, floor_log2(out.radius() / cfg.target) + 4);
    }
    throw PrecisionError("power " + brief(a) + "^" + brief(b) + " did not reach the requested precision");
}

// Integer power of an interval, using monotonicity of x^n on each sign.
Ball int_pow_ball(const Ball& a, const BigInt& n, const SeriesConfig& cfg) {
    const BigRational lo = exact_int_pow(a.lower(), n, cfg);
    const BigRational hi = exact_int_pow(a.upper(), n, cfg);
    Ball out = hull(Ball(lo), Ball(hi));
    if (!is_odd(n) && a.lower().sign() < 0 && a.upper().sign() > 0) {
        if (n < 0) throw PrecisionError("negative even power of an interval enclosing zero");
        out = hull(out, Ball(0));
    }
    return finish(out, cfg.target);
}

void require_positive(const Ball& a, const char* what) {
    if (a.lower().sign() > 0) return;
    if (a.upper().sign() <= 0) throw DomainError(std::string(what) + " needs a positive argument, got " + a.to_string());
    throw PrecisionError(std::string(what) + " argument " + a.to_string() + " is not certified positive");
}

}  // namespace

namespace {

// Computes 64x tighter than asked and reports radius target/2, so a later
// call at a tighter target always lands inside this ball.
template <typename F>
Ball nested(const F& point, const BigRational& a, const SeriesConfig& cfg) {
    const Ball b = point(a, cfg.with_target(cfg.target / BigRational(64)));
    if (b.is_exact()) return b;
    return Ball(b.center(), cfg.target / BigRational(2));
}

}  // namespace

Ball exp_e(const BigRational& a, const SeriesConfig& cfg) { return nested(exp_point, a, cfg); }

Ball exp_e(const Ball& a, const SeriesConfig& cfg) { return exp_ball(a, cfg); }

Ball ln_e(const BigRational& a, const SeriesConfig& cfg) { return nested(ln_point, a, cfg); }

Ball ln_e(const Ball& a, const SeriesConfig& cfg) {
    if (a.is_exact()) return ln_point(a.center(), cfg);
    require_positive(a, "ln");
    const SeriesConfig half = cfg.with_target(cfg.target / BigRational(2));
    return finish(hull(ln_point(a.lower(), half), ln_point(a.upper(), half)), cfg.target);
}

Ball pow(const Ball& a, const Ball& b, const SeriesConfig& cfg) {
    if (a.is_exact() && b.is_exact()) return pow_point(a.center(), b.center(), cfg);
    if (b.is_exact() && b.center().is_zero()) {
        if (a.is_exact() && a.center().is_zero()) throw DomainError("0 raised to a non-positive power");
        return Ball(1);
    }
    if (b.is_exact() && b.center().is_integer()) return int_pow_ball(a, b.center().num(), cfg);
    if (a.is_exact() && a.center() == BigRational(1)) return Ball(1);
    require_positive(a, "non-integer power");

    if (a.is_exact()) {
        // One logarithm serves the whole exponent interval.
        const BigRational bmax = std::max(b.lower().abs(), b.upper().abs());
        const double mag = bmax.to_double() * std::fabs(approx_log2(a.center()));
        if (mag > static_cast<double>(cfg.max_log2)) {
            throw ResourceError("power " + brief(a.center()) + "^" + b.to_string() + " exceeds 2^" +
                                std::to_string(cfg.max_log2));
        }
        const long mag_bits = static_cast<long>(std::ceil(mag));
        const long bscale = bmax.is_zero() ? 0 : std::max(0L, floor_log2(bmax) + 1);
        const BigRational t = cfg.target * pow2(-(mag_bits + bscale + 4));
        const Ball y = ln_point(a.center(), cfg.with_target(t)) * b;
        return finish(exp_ball(y, cfg.with_target(cfg.target / BigRational(2))), cfg.target);
    }

    // a^b = e^(b ln a) is bilinear in (b, ln a) under exp, so its extremes
    // over the box sit at the corners.
    std::vector<BigRational> as{a.lower()};
    if (!a.is_exact()) as.push_back(a.upper());
    std::vector<BigRational> bs{b.lower()};
    if (!b.is_exact()) bs.push_back(b.upper());
    const SeriesConfig half = cfg.with_target(cfg.target / BigRational(2));
    std::optional<Ball> out;
    for (const auto& x : as) {
        for (const auto& y : bs) {
            Ball v = pow_point(x, y, half);
            out = out ? hull(*out, v) : v;
        }
    }
    return finish(*out, cfg.target);
}

Ball root(const Ball& a, const Ball& b, const SeriesConfig& cfg) {
    if (b.is_exact() && b.center().is_zero()) throw DomainError("root of order zero");
    if (a.is_exact() && a.center().sign() <= 0) throw DomainError("root needs a positive radicand, got " + brief(a.center()));
    if (b.is_exact() && b.center() == BigRational(1)) return a;
    if (a.is_exact() && a.center() == BigRational(1)) return Ball(1);
    require_positive(a, "root");
    if (b.is_exact()) return pow(a, Ball(b.center().reciprocal()), cfg);
    return pow(a, Ball(1) / b, cfg);
}

Ball log(const Ball& a, const Ball& b, const SeriesConfig& cfg) {
    if (a.is_exact() && a.center().sign() <= 0) throw DomainError("log of non-positive value " + brief(a.center()));
    if (b.is_exact() && b.center().sign() <= 0) throw DomainError("log base must be positive, got " + brief(b.center()));
    if (b.is_exact() && b.center() == BigRational(1)) throw DomainError("log base must not be 1");
    if (a.is_exact() && a.center() == BigRational(1)) return Ball(0);
    if (a.is_exact() && b.is_exact() && a == b) return Ball(1);
    require_positive(a, "log");
    require_positive(b, "log base");

    if (a.is_exact() && b.is_exact()) {
        // Integer logarithms come out exact: b^k == a.
        const double k = std::round(approx_log2(a.center()) / approx_log2(b.center()));
        if (std::isfinite(k) && std::fabs(k) <= 4096 && k != 0) {
            const BigRational pk = exact_int_pow(b.center(), BigInt(static_cast<long>(k)), cfg);
            if (pk == a.center()) return Ball(BigRational(static_cast<long>(k)));
        }
    }

    long slack = 4;
    const double la = std::fabs(approx_log2(a.center().is_zero() ? a.upper() : a.center()));
    const double lb = std::fabs(approx_log2(b.center()));
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        // ln b can sit near zero, so the denominator gets extra bits.
        const long extra = static_cast<long>(std::ceil(std::max(0.0, -std::log2(std::max(lb, 1e-300)))));
        const long up = static_cast<long>(std::ceil(std::max(0.0, std::log2(std::max(la, 1.0)))));
        const BigRational t = pow2(-(bits_for(cfg.target) + slack + 2 * extra + up));
        const Ball num = ln_e(a, cfg.with_target(t));
        const Ball den = ln_e(b, cfg.with_target(t));
        Ball out = finish(num / den, cfg.target);
        if (out.radius() <= cfg.target || !(a.is_exact() && b.is_exact())) return out;
        slack += std::max(4L, floor_log2(out.radius() / cfg.target) + 4);
    }
    throw PrecisionError("log did not reach the requested precision");
}

}  // namespace opaxiom::series
