#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace opaxiom {

struct Operator;

using BigInt = mpz_class;

/// Exact rational number, always irreducible with a positive denominator.
class BigRational {
public:
    BigRational() = default;
    BigRational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    BigRational(const BigInt& value) : value_(value) {}  // NOLINT(google-explicit-constructor)

    /// num/den, normalized. Throws DomainError when den == 0.
    BigRational(const BigInt& num, const BigInt& den);

    const BigInt& num() const { return value_.get_num(); }
    const BigInt& den() const { return value_.get_den(); }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return den() == 1; }

    BigRational abs() const;
    BigRational reciprocal() const;

    /// "p/q", or "p" for integers.
    std::string to_string() const;
    /// Approximate value; only for diagnostics and search heuristics.
    double to_double() const;

    const mpq_class& raw() const { return value_; }

    BigRational& operator+=(const BigRational& o);
    BigRational& operator-=(const BigRational& o);
    BigRational& operator*=(const BigRational& o);
    BigRational& operator/=(const BigRational& o);

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
    friend BigRational operator-(const BigRational& a);

    friend bool operator==(const BigRational& a, const BigRational& b) {
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Wraps a fraction the caller guarantees is already irreducible with a
    /// positive denominator.
    static BigRational from_reduced(const BigInt& num, const BigInt& den);
    static BigRational from_mpq(mpq_class q);

private:
    mpq_class value_;
};

/// Greatest common divisor by the Euclidean algorithm. gcd(0, n) = n;
/// gcd(0, 0) throws DomainError. Negative inputs use their magnitudes.
BigInt gcd(const BigInt& a, const BigInt& b);

/// Irreducible form of num/den with a positive denominator.
BigRational reduce(const BigInt& num, const BigInt& den);

/// Greatest integer <= r.
BigInt floor(const BigRational& r);
/// Least integer >= r.
BigInt ceil(const BigRational& r);

/// Rank 1 and 2 operators: + is addition, ++ multiplication, - and / are
/// subtraction, -- and // are division. Throws DomainError on a zero divisor
/// and std::invalid_argument for ranks above 2.
BigRational low_op(const Operator& op, const BigRational& a, const BigRational& b);

/// Parses "p/q", "p" or "-p/q".
BigRational parse_rational(std::string_view text);

/// b^e for e >= 0.
BigInt ipow(const BigInt& base, unsigned long exponent);

/// Floor of log2 |x| for x != 0, exact.
long floor_log2(const BigRational& x);

/// 2^e as a rational, e may be negative.
BigRational pow2(long e);

/// p/q for short values, a magnitude like "~2^1234.5" for long ones; for
/// error messages.
std::string brief(const BigRational& x);

}  // namespace opaxiom
