#pragma once

// Reference computations used as ground truth by the tests. None of them
// call into the library under test except where a test says so explicitly.

#include <gmpxx.h>

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opaxiom/rational.hpp"
#include "opaxiom/term.hpp"

namespace oracle {

using opaxiom::BigInt;
using opaxiom::BigRational;
using opaxiom::Term;

inline BigRational q(long p, long d = 1) { return BigRational(BigInt(p), BigInt(d)); }

inline BigRational from_mpq(const mpq_class& v) { return BigRational(v.get_num(), v.get_den()); }

inline mpq_class to_mpq(const BigRational& r) { return mpq_class(r.num(), r.den()); }

// Truncated base-b digits of a rational: floor(|x| * b^n) printed in base b
// by GMP, with the point inserted n places from the right.
inline std::string long_division(const BigRational& x, unsigned base, std::size_t n) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), base, n);
    mpz_class num = abs(x.num()) * scale;
    mpz_class digits;
    mpz_fdiv_q(digits.get_mpz_t(), num.get_mpz_t(), x.den().get_mpz_t());
    std::string s = digits.get_str(static_cast<int>(base));
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (s.size() < n + 1) s.insert(0, n + 1 - s.size(), '0');
    if (n > 0) s.insert(s.size() - n, ".");
    if (x.sign() < 0) s.insert(0, "-");
    return s;
}

// sum_{k<=N} x^k / k! for |x| <= 1, stopped once the next term is below
// 10^-(digits+5); the tail is then below twice that.
inline mpq_class exp_partial_sum(const mpq_class& x, int digits) {
    mpq_class eps(1);
    for (int i = 0; i < digits + 5; ++i) eps /= 10;
    mpq_class sum = 0;
    mpq_class term = 1;
    for (long k = 1; abs(term) >= eps; ++k) {
        sum += term;
        term = term * x / k;
    }
    return sum;
}

// ln 2 = sum_{k>=1} 1 / (k 2^k); tail after N terms below 2^-N.
inline mpq_class ln2_partial_sum(int digits) {
    const long terms = static_cast<long>(std::ceil((digits + 5) * 3.33)) + 8;
    mpq_class sum = 0;
    mpz_class pow2 = 1;
    for (long k = 1; k <= terms; ++k) {
        pow2 *= 2;
        sum += mpq_class(1, pow2 * k);
    }
    return sum;
}

inline mpq_class ten_pow(int e) {
    mpq_class out(1);
    for (int i = 0; i < std::abs(e); ++i) out = e > 0 ? mpq_class(out * 10) : mpq_class(out / 10);
    return out;
}

// Plain bisection in long double on an increasing function.
inline long double bisect(const std::function<long double(long double)>& f, long double lo, long double hi,
                          int halvings = 80) {
    for (int i = 0; i < halvings; ++i) {
        const long double mid = (lo + hi) / 2;
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

// x rounded to `digits` decimal places, as an exact rational.
inline BigRational from_long_double(long double x, int digits = 15) {
    const long double scale = std::pow(10.0L, digits);
    const mpz_class n(std::to_string(std::llround(x * scale)), 10);
    return from_mpq(mpq_class(n) / ten_pow(digits));
}

// x with x^x = c, c >= 1.
inline long double self_power_root(long double c) {
    return bisect([c](long double x) { return std::pow(x, x) - c; }, 1.0L, std::max(2.0L, c));
}

// Value of a term using only ranks 1 and 2, straight over mpq_class.
inline mpq_class rational_value(const Term& t) {
    if (t.is_leaf()) return 1;
    const mpq_class a = rational_value(t.left());
    const mpq_class b = rational_value(t.right());
    const auto& op = t.op();
    if (op.rank == 1) return op.kind == opaxiom::Operator::Kind::Plus ? mpq_class(a + b) : mpq_class(a - b);
    if (op.rank == 2) {
        if (op.kind == opaxiom::Operator::Kind::Plus) return a * b;
        if (b == 0) throw std::domain_error("division by zero");
        return a / b;
    }
    throw std::invalid_argument("rational_value handles ranks 1 and 2 only");
}

// Random term of depth at most `depth`; `branch` is the chance of an inner node.
inline Term random_term(std::mt19937_64& rng, unsigned depth, unsigned max_rank, double branch = 0.6) {
    std::uniform_real_distribution<double> coin(0, 1);
    if (depth == 0 || coin(rng) > branch) return Term::leaf();
    static constexpr opaxiom::Operator::Kind kinds[] = {opaxiom::Operator::Kind::Plus, opaxiom::Operator::Kind::Minus,
                                                        opaxiom::Operator::Kind::Slash};
    const opaxiom::Operator op(kinds[rng() % 3], static_cast<unsigned>(1 + rng() % max_rank));
    Term l = random_term(rng, depth - 1, max_rank, branch);
    Term r = random_term(rng, depth - 1, max_rank, branch);
    return Term::node(op, std::move(l), std::move(r));
}

// Random rational p/q with |p| <= pmax and 1 <= q <= qmax.
inline BigRational random_rational(std::mt19937_64& rng, long pmax, long qmax) {
    std::uniform_int_distribution<long> p(-pmax, pmax);
    std::uniform_int_distribution<long> d(1, qmax);
    return q(p(rng), d(rng));
}

// Random rational in [lo, hi] on a grid of 1/den.
inline BigRational random_in(std::mt19937_64& rng, const BigRational& lo, const BigRational& hi, long den) {
    std::uniform_int_distribution<long> u(0, den);
    return lo + (hi - lo) * q(u(rng), den);
}

using FareyRow = std::vector<std::pair<long, long>>;

// Rows built straight from the recursion: keep the old row at odd
// positions, insert neighbour sums in between.
inline std::vector<FareyRow> farey_rows(unsigned kmax) {
    std::vector<FareyRow> rows{{{0, 1}, {1, 1}}};
    while (rows.size() < kmax) {
        const FareyRow& prev = rows.back();
        FareyRow next;
        next.reserve(2 * prev.size() - 1);
        for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
            next.push_back(prev[i]);
            next.push_back({prev[i].first + prev[i + 1].first, prev[i].second + prev[i + 1].second});
        }
        next.push_back(prev.back());
        rows.push_back(std::move(next));
    }
    return rows;
}

// 1-based position of p/q in a row, by linear scan, or 0.
inline std::size_t scan_row(const FareyRow& row, long p, long q) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i].first == p && row[i].second == q) return i + 1;
    }
    return 0;
}

// Depth of p/q in the mediant tree: sum of its continued fraction quotients.
inline long cf_depth(long p, long q) {
    if (p == 0 || p == q) return 1;
    long depth = 0;
    while (p != 0) {
        depth += q / p;
        const long r = q % p;
        q = p;
        p = r;
    }
    return depth;
}

}  // namespace oracle
