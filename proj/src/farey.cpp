#include "opaxiom/farey.hpp"

#include <stdexcept>
#include <string>

#include "opaxiom/error.hpp"

namespace opaxiom::farey {

namespace {

std::size_t checked_length(unsigned k, const FareyConfig& config) {
    if (k == 0) throw DomainError("farey row index must be >= 1");
    if (k - 1 >= 63) throw ResourceError("farey row " + std::to_string(k) + " is too long");
    const std::size_t len = (std::size_t{1} << (k - 1)) + 1;
    if (len > config.max_row_length) {
        throw ResourceError("farey row " + std::to_string(k) + " has " + std::to_string(len) +
                            " entries, above the cap of " + std::to_string(config.max_row_length));
    }
    return len;
}

}  // namespace

std::vector<FareyEntry> farey_row_serial(unsigned k, const FareyConfig& config) {
    checked_length(k, config);
    std::vector<FareyEntry> row{{0, 1}, {1, 1}};
    for (unsigned j = 2; j <= k; ++j) {
        std::vector<FareyEntry> next(2 * row.size() - 1);
        for (std::size_t i = 0; i < row.size(); ++i) {
            next[2 * i] = row[i];
            if (i + 1 < row.size()) {
                next[2 * i + 1] = {row[i].top + row[i + 1].top, row[i].bottom + row[i + 1].bottom};
            }
        }
        row = std::move(next);
    }
    return row;
}

std::vector<FareyEntry> farey_row(unsigned k, const FareyConfig& config) {
    checked_length(k, config);
    std::vector<FareyEntry> row{{0, 1}, {1, 1}};
    for (unsigned j = 2; j <= k; ++j) {
        const auto n = static_cast<std::ptrdiff_t>(row.size());
        std::vector<FareyEntry> next(2 * row.size() - 1);
#pragma omp parallel for schedule(static) if (n > 4096)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            next[2 * i] = row[i];
            if (i + 1 < n) {
                next[2 * i + 1] = {row[i].top + row[i + 1].top, row[i].bottom + row[i + 1].bottom};
            }
        }
        row = std::move(next);
    }
    return row;
}

BigInt row_length(std::uint64_t k) {
    if (k == 0) throw DomainError("farey row index must be >= 1");
    return (BigInt(1) << static_cast<mp_bitcnt_t>(k - 1)) + 1;
}

std::pair<BigInt, BigInt> entry_at(std::uint64_t k, const BigInt& l) {
    if (k == 0) throw DomainError("farey row index must be >= 1");
    if (l < 1 || l > row_length(k)) {
        throw DomainError("position " + l.get_str() + " is outside row " + std::to_string(k));
    }
    // value = alpha * E(j, m) + beta * E(j, m + 1), walked up to row 1.
    BigInt m = l;
    BigInt alpha = 1;
    BigInt beta = 0;
    for (std::uint64_t j = k; j > 1; --j) {
        if (mpz_odd_p(m.get_mpz_t())) {
            m = (m + 1) / 2;
            alpha += beta;
        } else {
            m /= 2;
            beta += alpha;
        }
    }
    // Row 1 is [0/1, 1/1].
    if (m == 1) return {beta, alpha + beta};
    return {alpha, alpha};
}

FareyIndex locate(const BigInt& p, const BigInt& q, const FareyConfig& config) {
    if (q <= 0 || p < 0 || p > q) throw DomainError("locate needs 0 <= p/q <= 1 with q > 0");
    if (gcd(p, q) != 1) throw DomainError("locate needs a reduced fraction, got " + p.get_str() + "/" + q.get_str());
    if (p == 0) return {1, 1};
    if (p == q) return {1, 2};

    // Neighbours lp/lq < p/q < rp/rq, adjacent in row k, with lp/lq at index i.
    BigInt lp = 0, lq = 1, rp = 1, rq = 1;
    std::uint64_t k = 1;
    BigInt i = 1;
    for (;;) {
        if (k + 1 > config.max_depth) {
            throw ResourceError("fraction " + p.get_str() + "/" + q.get_str() + " lies deeper than row " +
                                std::to_string(config.max_depth));
        }
        const BigInt mp = lp + rp;
        const BigInt mq = lq + rq;
        const int c = cmp(BigInt(p * mq), BigInt(q * mp));
        if (c == 0) return {k + 1, BigInt(i * 2)};

        const BigInt a = p * lq - q * lp;  // > 0
        const BigInt b = q * rp - p * rq;  // > 0
        BigInt run;
        if (c < 0) {
            mpz_cdiv_q(run.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
        } else {
            mpz_cdiv_q(run.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        }
        run -= 1;
        if (run > config.max_depth) run = config.max_depth;
        const unsigned long steps = run.get_ui();
        if (k + steps + 1 > config.max_depth) {
            throw ResourceError("fraction " + p.get_str() + "/" + q.get_str() + " lies deeper than row " +
                                std::to_string(config.max_depth));
        }
        if (c < 0) {
            rp += run * lp;
            rq += run * lq;
            i = ((i - 1) << static_cast<mp_bitcnt_t>(steps)) + 1;
        } else {
            lp += run * rp;
            lq += run * rq;
            i <<= static_cast<mp_bitcnt_t>(steps);
        }
        k += steps;
    }
}

BigRational simplest_between(const BigRational& lo, const BigRational& hi) {
    if (hi < lo) throw std::invalid_argument("simplest_between: empty interval");
    if (lo.sign() <= 0 && hi.sign() >= 0) return BigRational(0);
    if (hi.sign() < 0) return -simplest_between(-hi, -lo);

    const BigInt up = opaxiom::ceil(lo);
    if (BigRational(up) <= hi) return BigRational(up);
    const BigInt n = opaxiom::floor(lo);
    const BigRational inner = simplest_between((hi - BigRational(n)).reciprocal(),
                                               (lo - BigRational(n)).reciprocal());
    return BigRational(n) + inner.reciprocal();
}

}  // namespace opaxiom::farey
