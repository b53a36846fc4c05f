#pragma once

#include <string>

#include "opaxiom/rational.hpp"

namespace opaxiom {

/// Rational center plus rational error radius: the approximate value is
/// known to lie in [center - radius, center + radius].
class Ball {
public:
    Ball() = default;
    Ball(BigRational center, BigRational radius);  // radius must be >= 0
    Ball(const BigRational& value) : center_(value) {}  // NOLINT(google-explicit-constructor)
    Ball(long value) : center_(value) {}  // NOLINT(google-explicit-constructor)

    const BigRational& center() const { return center_; }
    const BigRational& radius() const { return radius_; }
    BigRational lower() const { return center_ - radius_; }
    BigRational upper() const { return center_ + radius_; }

    bool is_exact() const { return radius_.is_zero(); }
    bool contains(const BigRational& x) const;
    bool contains(const Ball& inner) const;
    bool overlaps(const Ball& other) const;

    /// Rounds the center to the nearest multiple of 2^-bits and widens the
    /// radius by the rounding error. The radius itself is rounded up to a
    /// short dyadic.
    Ball rounded(long bits) const;

    /// Rounds only the radius, upward, to about 40 significant bits.
    Ball tidy() const;

    std::string to_string() const;

    friend Ball operator+(const Ball& a, const Ball& b);
    friend Ball operator-(const Ball& a, const Ball& b);
    friend Ball operator*(const Ball& a, const Ball& b);
    /// Throws DomainError for an exact zero divisor and PrecisionError when
    /// the divisor merely encloses zero.
    friend Ball operator/(const Ball& a, const Ball& b);
    friend Ball operator-(const Ball& a);

    friend bool operator==(const Ball&, const Ball&) = default;

private:
    BigRational center_;
    BigRational radius_;
};

/// Smallest ball containing both arguments.
Ball hull(const Ball& a, const Ball& b);

/// Smallest p with 2^-p <= target (target > 0).
long bits_for(const BigRational& target);

/// r rounded up to a dyadic with about `significant` bits.
BigRational round_up(const BigRational& r, long significant = 40);

/// Nearest multiple of 2^-bits.
BigRational round_to_grid(const BigRational& x, long bits);

/// Rough log2 |x| for a nonzero rational, usable far beyond double range.
double approx_log2(const BigRational& x);

}  // namespace opaxiom
