#include <doctest.h>

#include <random>

#include "opaxiom/error.hpp"
#include "opaxiom/rational.hpp"
#include "opaxiom/term.hpp"
#include "oracles.hpp"

using namespace opaxiom;
using oracle::q;

namespace {

long brute_gcd(long a, long b) {
    long best = 1;
    for (long d = 1; d <= std::max(a, b); ++d) {
        if (a % d == 0 && b % d == 0) best = d;
    }
    return best;
}

}  // namespace

TEST_CASE("gcd") {
    CHECK(gcd(12, 8) == 4);
    CHECK(gcd(7, 1) == 1);
    CHECK(gcd(1071, 462) == brute_gcd(1071, 462));
    CHECK(gcd(1071, 462) == 21);
    CHECK(gcd(0, 9) == 9);
    CHECK_THROWS_AS(gcd(0, 0), DomainError);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> u(1, 2000);
    for (int i = 0; i < 300; ++i) {
        const long a = u(rng);
        const long b = u(rng);
        REQUIRE(gcd(a, b) == brute_gcd(a, b));
    }
}

TEST_CASE("reduce") {
    CHECK(reduce(6, 4) == q(3, 2));
    CHECK(reduce(-6, -4) == q(3, 2));
    CHECK(reduce(0, -5).den() == 1);
    // 462 = 2*3*7*11 and 1071 = 3^2*7*17 share 3*7.
    const BigRational r = reduce(462, 1071);
    CHECK(r.num() == 22);
    CHECK(r.den() == 51);
    CHECK_THROWS_AS(reduce(1, 0), DomainError);
    CHECK_THROWS_AS(BigRational(BigInt(1), BigInt(0)), DomainError);
}

TEST_CASE("floor and ceil") {
    CHECK(opaxiom::floor(q(7, 2)) == 3);
    CHECK(opaxiom::floor(q(-7, 2)) == -4);
    CHECK(opaxiom::floor(q(4)) == 4);
    CHECK(opaxiom::ceil(q(-7, 2)) == -3);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const BigRational r = oracle::random_rational(rng, 100000, 997);
        const BigRational f(opaxiom::floor(r));
        REQUIRE(f <= r);
        REQUIRE(r < f + 1);
    }
}

TEST_CASE("low operations") {
    CHECK(low_op(plus(1), 1, 1) == 2);
    CHECK(low_op(slash(1), 5, 5) == 0);
    CHECK(low_op(minus(2), 3, 2) == q(3, 2));
    CHECK(low_op(plus(2), q(2, 3), q(9, 4)) == q(3, 2));
    CHECK_THROWS_AS(low_op(minus(2), 1, 0), DomainError);
    CHECK_THROWS_AS(low_op(slash(2), 1, 0), DomainError);
    CHECK_THROWS_AS(low_op(plus(3), 1, 1), std::invalid_argument);
}

TEST_CASE("field laws on random rationals") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const BigRational a = oracle::random_rational(rng, 1000, 1000);
        const BigRational b = oracle::random_rational(rng, 1000, 1000);
        const BigRational c = oracle::random_rational(rng, 1000, 1000);
        REQUIRE(reduce(a.num(), a.den()) == a);
        REQUIRE(gcd(abs(a.num()), a.den()) == 1);
        REQUIRE(a.den() > 0);
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE((a - b) + b == a);
        REQUIRE(low_op(minus(1), a, b) == low_op(slash(1), a, b));
        if (!b.is_zero()) REQUIRE(low_op(minus(2), a, b) == low_op(slash(2), a, b));
        // Cross-check against plain GMP.
        REQUIRE(oracle::to_mpq(a * b + c) == oracle::to_mpq(a) * oracle::to_mpq(b) + oracle::to_mpq(c));
    }
}

TEST_CASE("text round trip and helpers") {
    CHECK(parse_rational("22/51") == q(22, 51));
    CHECK(parse_rational("-6/4") == q(-3, 2));
    CHECK(parse_rational("5") == 5);
    CHECK(q(-3, 2).to_string() == "-3/2");
    CHECK(q(4).to_string() == "4");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK(ipow(3, 4) == 81);
    CHECK(floor_log2(q(1, 3)) == -2);
    CHECK(floor_log2(q(8)) == 3);
    CHECK(pow2(-3) == q(1, 8));
    CHECK(q(0, 7).den() == 1);
    CHECK(q(0, 7) == q(0, -3));
}
