#include "opaxiom/rational.hpp"

#include <cmath>
#include <cstdio>

#include <stdexcept>
#include <utility>

#include "opaxiom/error.hpp"
#include "opaxiom/term.hpp"

namespace opaxiom {

BigRational::BigRational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

BigRational BigRational::from_reduced(const BigInt& num, const BigInt& den) {
    BigRational r;
    r.value_.get_num() = num;
    r.value_.get_den() = den;
    return r;
}

BigRational BigRational::from_mpq(mpq_class q) {
    BigRational r;
    r.value_ = std::move(q);
    return r;
}

BigRational BigRational::abs() const { return from_mpq(::abs(value_)); }

BigRational BigRational::reciprocal() const {
    if (is_zero()) throw DomainError("reciprocal of zero");
    return from_mpq(mpq_class(1) / value_);
}

std::string BigRational::to_string() const { return value_.get_str(10); }

double BigRational::to_double() const { return value_.get_d(); }

BigRational& BigRational::operator+=(const BigRational& o) {
    value_ += o.value_;
    return *this;
}

BigRational& BigRational::operator-=(const BigRational& o) {
    value_ -= o.value_;
    return *this;
}

BigRational& BigRational::operator*=(const BigRational& o) {
    value_ *= o.value_;
    return *this;
}

BigRational& BigRational::operator/=(const BigRational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    value_ /= o.value_;
    return *this;
}

BigRational operator-(const BigRational& a) { return BigRational::from_mpq(-a.value_); }

BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt x = ::abs(a);
    BigInt y = ::abs(b);
    if (x == 0 && y == 0) throw DomainError("gcd(0, 0) is undefined");
    // Common powers of two first: dyadic operands then finish immediately.
    const mp_bitcnt_t tx = x == 0 ? ~mp_bitcnt_t{0} : mpz_scan1(x.get_mpz_t(), 0);
    const mp_bitcnt_t ty = y == 0 ? ~mp_bitcnt_t{0} : mpz_scan1(y.get_mpz_t(), 0);
    const mp_bitcnt_t shift = std::min(tx, ty);
    if (x != 0 && y != 0) {
        x >>= shift;
        y >>= shift;
    }
    BigInt r;
    while (y != 0) {
        mpz_tdiv_r(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        x.swap(y);
        y.swap(r);
    }
    if (a != 0 && b != 0) x <<= shift;
    return x;
}

BigRational reduce(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("zero denominator");
    if (num == 0) return BigRational::from_reduced(0, 1);
    const BigInt g = gcd(num, den);
    BigInt p = num / g;
    BigInt q = den / g;
    if (q < 0) {
        p = -p;
        q = -q;
    }
    return BigRational::from_reduced(p, q);
}

BigInt floor(const BigRational& r) {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
    return out;
}

BigInt ceil(const BigRational& r) {
    BigInt out;
    mpz_cdiv_q(out.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
    return out;
}

BigRational low_op(const Operator& op, const BigRational& a, const BigRational& b) {
    if (op.rank == 1) {
        return op.kind == Operator::Kind::Plus ? a + b : a - b;
    }
    if (op.rank == 2) {
        if (op.kind == Operator::Kind::Plus) return a * b;
        if (b.is_zero()) throw DomainError("division by zero");
        return a / b;
    }
    throw std::invalid_argument("low_op: rank " + std::to_string(op.rank) + " is not a low operation");
}

BigRational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const std::string num(text.substr(0, slash));
    const std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
    BigInt p, q;
    if (num.empty() || den.empty() || p.set_str(num, 10) != 0 || q.set_str(den, 10) != 0) {
        throw std::invalid_argument("not a rational: " + std::string(text));
    }
    return BigRational(p, q);
}

BigInt ipow(const BigInt& base, unsigned long exponent) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

long floor_log2(const BigRational& x) {
    if (x.is_zero()) throw DomainError("log2 of zero");
    const BigInt n = ::abs(x.num());
    const long nb = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
    const long db = static_cast<long>(mpz_sizeinbase(x.den().get_mpz_t(), 2));
    // 2^(nb-1) <= n < 2^nb and 2^(db-1) <= d < 2^db, so the answer is
    // nb - db or nb - db - 1.
    long e = nb - db;
    if (x.abs() < pow2(e)) --e;
    return e;
}

BigRational pow2(long e) {
    BigInt one = 1;
    if (e >= 0) return BigRational(BigInt(one << static_cast<mp_bitcnt_t>(e)));
    return BigRational::from_reduced(1, BigInt(one << static_cast<mp_bitcnt_t>(-e)));
}

std::string brief(const BigRational& x) {
    const std::size_t size = mpz_sizeinbase(x.num().get_mpz_t(), 10) + mpz_sizeinbase(x.den().get_mpz_t(), 10);
    if (size <= 40) return x.to_string();
    if (x.is_zero()) return "0";
    long en = 0;
    long ed = 0;
    const double mn = mpz_get_d_2exp(&en, x.num().get_mpz_t());
    const double md = mpz_get_d_2exp(&ed, x.den().get_mpz_t());
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s~2^%.6g", x.sign() < 0 ? "-" : "",
                  std::log2(std::fabs(mn / md)) + static_cast<double>(en - ed));
    return buf;
}

}  // namespace opaxiom
