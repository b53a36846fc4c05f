#include "opaxiom/ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "opaxiom/error.hpp"

namespace opaxiom {

Ball::Ball(BigRational center, BigRational radius) : center_(std::move(center)), radius_(std::move(radius)) {
    if (radius_.sign() < 0) throw std::invalid_argument("Ball radius must be non-negative");
}

bool Ball::contains(const BigRational& x) const { return lower() <= x && x <= upper(); }

bool Ball::contains(const Ball& inner) const {
    return lower() <= inner.lower() && inner.upper() <= upper();
}

bool Ball::overlaps(const Ball& other) const {
    return lower() <= other.upper() && other.lower() <= upper();
}

BigRational round_to_grid(const BigRational& x, long bits) {
    // floor(x * 2^bits + 1/2) / 2^bits
    BigInt num = x.num();
    BigInt den = x.den();
    if (bits >= 0) {
        num <<= static_cast<mp_bitcnt_t>(bits);
    } else {
        den <<= static_cast<mp_bitcnt_t>(-bits);
    }
    BigInt q;
    BigInt twice = 2 * num + den;
    BigInt den2 = 2 * den;
    mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), den2.get_mpz_t());
    return BigRational(q) * pow2(-bits);
}

BigRational round_up(const BigRational& r, long significant) {
    if (r.sign() <= 0) return r;
    const long e = floor_log2(r);
    const long s = significant - e;
    BigInt num = r.num();
    BigInt den = r.den();
    if (s >= 0) {
        num <<= static_cast<mp_bitcnt_t>(s);
    } else {
        den <<= static_cast<mp_bitcnt_t>(-s);
    }
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return BigRational(q) * pow2(-s);
}

Ball Ball::rounded(long bits) const {
    const BigInt& den = center_.den();
    const bool on_grid = mpz_popcount(den.get_mpz_t()) == 1 &&
                         static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1 <= bits;
    if (on_grid) return tidy();
    const BigRational c = round_to_grid(center_, bits);
    const BigRational err = (c - center_).abs();
    return Ball(c, round_up(radius_ + err));
}

Ball Ball::tidy() const { return Ball(center_, round_up(radius_)); }

std::string Ball::to_string() const {
    if (is_exact()) return brief(center_);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g +/- %.3g", center_.to_double(), radius_.to_double());
    return buf;
}

Ball operator+(const Ball& a, const Ball& b) { return Ball(a.center_ + b.center_, a.radius_ + b.radius_); }

Ball operator-(const Ball& a, const Ball& b) { return Ball(a.center_ - b.center_, a.radius_ + b.radius_); }

Ball operator-(const Ball& a) { return Ball(-a.center_, a.radius_); }

Ball operator*(const Ball& a, const Ball& b) {
    BigRational r = a.center_.abs() * b.radius_ + b.center_.abs() * a.radius_ + a.radius_ * b.radius_;
    return Ball(a.center_ * b.center_, std::move(r));
}

Ball operator/(const Ball& a, const Ball& b) {
    if (b.is_exact() && b.center_.is_zero()) throw DomainError("division by zero");
    const BigRational mag = b.center_.abs();
    if (b.radius_ >= mag) throw PrecisionError("divisor encloses zero");
    const BigRational c = a.center_ / b.center_;
    if (b.is_exact()) return Ball(c, a.radius_ / mag);
    BigRational r = (a.radius_ * mag + a.center_.abs() * b.radius_) / (mag * (mag - b.radius_));
    return Ball(c, std::move(r));
}

Ball hull(const Ball& a, const Ball& b) {
    const BigRational lo = std::min(a.lower(), b.lower());
    const BigRational hi = std::max(a.upper(), b.upper());
    const BigRational two(2);
    return Ball((lo + hi) / two, (hi - lo) / two);
}

long bits_for(const BigRational& target) {
    if (target.sign() <= 0) throw std::invalid_argument("precision target must be positive");
    return -floor_log2(target);
}

double approx_log2(const BigRational& x) {
    if (x.is_zero()) return -std::numeric_limits<double>::infinity();
    long en = 0;
    long ed = 0;
    const double mn = mpz_get_d_2exp(&en, x.num().get_mpz_t());
    const double md = mpz_get_d_2exp(&ed, x.den().get_mpz_t());
    return std::log2(std::fabs(mn / md)) + static_cast<double>(en - ed);
}

}  // namespace opaxiom
