// Acceptance run: one PASS/FAIL line per criterion, each with its runtime
// and limit. Exits 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "opaxiom/cli.hpp"
#include "opaxiom/error.hpp"
#include "opaxiom/farey.hpp"
#include "opaxiom/hyperop.hpp"
#include "opaxiom/precision.hpp"
#include "opaxiom/series.hpp"
#include "opaxiom/term.hpp"

using namespace opaxiom;
using oracle::q;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    const char* name;
    /// 0 means no runtime limit.
    double limit_seconds;
    std::function<Outcome()> run;
};

BigRational ten(int e) { return oracle::from_mpq(oracle::ten_pow(e)); }

std::string count(std::size_t good, std::size_t total, const char* what) {
    return std::to_string(good) + "/" + std::to_string(total) + " " + what;
}

hyper::HyperConfig hyper_at(const BigRational& target) {
    hyper::HyperConfig c;
    c.target = target;
    return c;
}

Outcome parser_round_trip() {
    std::mt19937_64 rng(1001);
    std::size_t good = 0;
    std::size_t deepest = 0;
    constexpr std::size_t kTerms = 10'000;
    for (std::size_t i = 0; i < kTerms; ++i) {
        const Term t = oracle::random_term(rng, 12, 9, 0.62);
        deepest = std::max(deepest, t.depth());
        const bool canonical = parse(render(t, RenderStyle::Canonical)) == t;
        const bool sugared = parse(render(t, RenderStyle::Sugared)) == t;
        if (canonical && sugared) ++good;
    }
    return {good == kTerms, count(good, kTerms, "terms") + ", max depth " + std::to_string(deepest)};
}

Outcome trace_chain() {
    std::istringstream in;
    std::ostringstream out;
    std::ostringstream err;
    const int status = cli::run({"trace", "[[1+[1+1]]----[1+1]]", "--digits", "10"}, in, out, err);
    std::vector<std::string> lines;
    std::istringstream text(out.str());
    for (std::string line; std::getline(text, line);) lines.push_back(line);

    const std::string value = oracle::long_division(oracle::from_long_double(oracle::self_power_root(3), 18), 10, 10);
    const std::vector<std::string> expected{"[[1+2]----[1+1]]", "[3----[1+1]]", "[3----2]", value};
    const bool pass = status == 0 && lines == expected;
    std::string got;
    for (const auto& l : lines) got += (got.empty() ? "" : " -> ") + l;
    return {pass, got + " (oracle " + value + ")"};
}

Outcome middle_ops() {
    series::SeriesConfig c;
    c.target = ten(-40);
    const BigRational eps = ten(-40);
    const Ball e = series::exp_e(BigRational(1), c);
    const Ball l = series::ln_e(BigRational(2), c);
    const BigRational e_err = (e.center() - oracle::from_mpq(oracle::exp_partial_sum(1, 60))).abs();
    const BigRational l_err = (l.center() - oracle::from_mpq(oracle::ln2_partial_sum(60))).abs();
    const bool accurate = e_err <= eps && l_err <= eps && e.radius() <= eps && l.radius() <= eps;

    std::mt19937_64 rng(1003);
    series::SeriesConfig rt;
    rt.target = ten(-30);
    std::size_t good = 0;
    for (int i = 0; i < 200; ++i) {
        const BigRational a = oracle::random_in(rng, -10, 10, 1L << 30);
        if (series::ln_e(series::exp_e(a, rt), rt).contains(a)) ++good;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "|exp(1) - oracle| = %.1e, |ln 2 - oracle| = %.1e, ", e_err.to_double(),
                  l_err.to_double());
    return {accurate && good == 200, buf + count(good, 200, "round trips")};
}

Outcome farey_table() {
    constexpr unsigned kRows = 12;
    constexpr unsigned kScanRows = 21;
    const auto rows = oracle::farey_rows(kScanRows);
    bool rows_ok = true;
    for (unsigned k = 1; k <= kRows; ++k) {
        const auto row = farey::farey_row(k);
        rows_ok = rows_ok && row.size() == (std::size_t{1} << (k - 1)) + 1;
        for (std::size_t i = 0; rows_ok && i < row.size(); ++i) {
            rows_ok = std::gcd(row[i].top, row[i].bottom) == 1 &&
                      row[i].top == static_cast<std::uint64_t>(rows[k - 1][i].first) &&
                      row[i].bottom == static_cast<std::uint64_t>(rows[k - 1][i].second) &&
                      (i == 0 || row[i - 1].top * row[i].bottom < row[i].top * row[i - 1].bottom);
        }
        if (k > 1) {
            const auto prev = farey::farey_row(k - 1);
            for (std::size_t i = 0; rows_ok && i < prev.size(); ++i) rows_ok = row[2 * i] == prev[i];
        }
    }

    // One pass over each oracle row finds every wanted fraction in it.
    std::map<std::pair<long, long>, farey::FareyIndex> located;
    std::size_t total = 0;
    std::size_t good = 0;
    for (long d = 1; d <= 64; ++d) {
        for (long p = 0; p <= d; ++p) {
            if (std::gcd(p, d) != 1) continue;
            ++total;
            located[{p, d}] = farey::locate(p, d);
        }
    }
    std::map<std::pair<long, long>, std::size_t> first_seen;
    for (unsigned k = 1; k <= kScanRows; ++k) {
        const auto& row = rows[k - 1];
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (located.count(row[i]) && !first_seen.count(row[i])) first_seen[row[i]] = (std::size_t{k} << 32) | (i + 1);
        }
    }
    std::size_t scanned = 0;
    for (const auto& [frac, idx] : located) {
        const auto [top, bottom] = farey::entry_at(idx.row, idx.position);
        bool ok = top == frac.first && bottom == frac.second &&
                  static_cast<long>(idx.row) == oracle::cf_depth(frac.first, frac.second);
        if (const auto it = first_seen.find(frac); it != first_seen.end()) {
            ++scanned;
            ok = ok && idx.row == (it->second >> 32) && idx.position == (it->second & 0xffffffffu);
        } else {
            ok = ok && idx.row > kScanRows;
        }
        if (ok) ++good;
    }
    return {rows_ok && good == total,
            std::string("rows 1-12 ") + (rows_ok ? "ok" : "WRONG") + ", " + count(good, total, "fractions located") +
                " (" + std::to_string(scanned) + " by full scans of rows 1-21, the rest past row 21 by entry_at)"};
}

Outcome identities() {
    std::mt19937_64 rng(1005);
    const hyper::HyperConfig cfg = hyper_at(ten(-10));
    std::size_t good = 0;
    std::size_t total = 0;
    for (unsigned r = 4; r <= 6; ++r) {
        for (int i = 0; i < 100; ++i) {
            const BigRational a = BigRational(1) + oracle::random_in(rng, q(1, 1000), 50, 7919);
            const BigRational b = oracle::random_in(rng, 0, 20, 257);
            total += 4;
            good += hyper::hyper_forward(r, a, 0, cfg) == Ball(1);
            good += hyper::hyper_forward(r, a, 1, cfg) == Ball(a);
            good += hyper::hyper_forward(r, 1, b, cfg) == Ball(1);
            good += hyper::hyper_inverse_minus(r, a, 1, cfg) == Ball(a);
        }
    }
    return {good == total, count(good, total, "identities exact")};
}

Outcome oracle_values() {
    const hyper::HyperConfig cfg = hyper_at(ten(-10));
    const BigRational max_radius = ten(-10);
    struct Case {
        const char* label;
        Ball value;
        long expected;
    };
    const Case cases[] = {
        {"forward(4,2,3)", hyper::hyper_forward(4, 2, 3, cfg), 16},
        {"forward(5,2,3)", hyper::hyper_forward(5, 2, 3, cfg), 65536},
        {"inverse_slash(4,16,2)", hyper::hyper_inverse_slash(4, 16, 2, cfg), 3},
        {"inverse_minus(4,16,3)", hyper::hyper_inverse_minus(4, 16, 3, cfg), 2},
    };
    std::size_t good = 0;
    std::string detail;
    for (const Case& c : cases) {
        const bool ok = c.value.contains(BigRational(c.expected)) && c.value.radius() <= max_radius;
        good += ok;
        detail += std::string(detail.empty() ? "" : ", ") + c.label + (ok ? " ok" : " WRONG: " + c.value.to_string());
    }
    return {good == 4, detail};
}

// a^^n for whole n in long double.
long double tower(long double a, long n) {
    long double v = 1;
    for (long i = 0; i < n; ++i) v = std::pow(a, v);
    return v;
}

Outcome rational_heights() {
    const hyper::HyperConfig cfg = hyper_at(ten(-10));
    const BigRational max_radius = ten(-8);
    std::size_t good = 0;
    std::size_t total = 0;
    std::string worst;
    for (const BigRational& a : {q(3, 2), q(2), q(3)}) {
        for (const auto [p, d] : {std::pair{1L, 2L}, {1L, 3L}, {2L, 3L}, {3L, 4L}}) {
            ++total;
            const Ball v = hyper::hyper_forward(4, a, q(p, d), cfg);
            // X with X^^d = a^^p, by bisection.
            const long double target = tower(a.to_double(), p);
            const long double x = oracle::bisect([&](long double t) { return tower(t, d) - target; }, 1,
                                                 std::max(2.0L, target), 200);
            const Ball reference(oracle::from_long_double(x, 16), ten(-12));
            if (v.radius() <= max_radius && v.overlaps(reference)) {
                ++good;
            } else {
                worst = a.to_string() + "^^(" + std::to_string(p) + "/" + std::to_string(d) + ")=" + v.to_string();
            }
        }
    }
    return {good == total, count(good, total, "heights agree") + (worst.empty() ? "" : ", e.g. " + worst)};
}

struct Sample {
    BigRational x;
    Ball value;
};

struct Pool {
    std::string label;
    std::vector<Sample> samples;
};

// Ordered pairs from a pool of sorted samples; counts those whose values are
// strictly ordered with a 4x-radius gap.
std::size_t ordered_pairs(std::mt19937_64& rng, const std::vector<Pool>& pools, std::size_t pairs,
                          std::string& example) {
    std::size_t good = 0;
    for (std::size_t n = 0; n < pairs; ++n) {
        const Pool& chosen = pools[rng() % pools.size()];
        const auto& pool = chosen.samples;
        std::size_t i = rng() % pool.size();
        std::size_t j = rng() % (pool.size() - 1);
        if (j >= i) ++j;
        if (i > j) std::swap(i, j);
        const Ball& lo = pool[i].value;
        const Ball& hi = pool[j].value;
        if (hi.center() - lo.center() > 4 * (lo.radius() + hi.radius())) {
            ++good;
        } else if (example.empty()) {
            example = chosen.label + ": " + pool[i].x.to_string() + " < " + pool[j].x.to_string() + " but " +
                      lo.to_string() + " >= " + hi.to_string();
        }
    }
    return good;
}

Outcome monotonicity() {
    const hyper::HyperConfig cfg = hyper_at(ten(-12));
    std::mt19937_64 rng(1007);
    constexpr std::size_t kPairs = 500;

    // Bases 1.05 .. 3 at fixed heights with small denominators.
    const std::vector<BigRational> base_heights{q(1, 3), q(1, 2), q(2, 3), q(1), q(4, 3),
                                                q(3, 2), q(5, 3), q(2),    q(7, 3), q(5, 2)};
    std::vector<Pool> by_base;
    for (const BigRational& b : base_heights) {
        Pool pool{"height " + b.to_string(), {}};
        for (long k = 1; k <= 40; ++k) {
            const BigRational a = BigRational(1) + q(k, 20);
            pool.samples.push_back({a, hyper::hyper_forward(4, a, b, cfg)});
        }
        by_base.push_back(std::move(pool));
    }
    std::string base_example;
    const std::size_t base_good = ordered_pairs(rng, by_base, kPairs, base_example);

    // Heights p/q in [0, 3] with q <= 8 at fixed bases.
    std::vector<BigRational> heights;
    for (long d = 1; d <= 8; ++d) {
        for (long p = 0; p <= 3 * d; ++p) {
            if (std::gcd(p, d) == 1) heights.push_back(q(p, d));
        }
    }
    std::sort(heights.begin(), heights.end());
    std::vector<Pool> by_height;
    for (const BigRational& a : {q(11, 10), q(6, 5), q(5, 4), q(3, 2)}) {
        Pool pool{"base " + a.to_string(), {}};
        for (const BigRational& b : heights) pool.samples.push_back({b, hyper::hyper_forward(4, a, b, cfg)});
        by_height.push_back(std::move(pool));
    }
    std::string height_example;
    const std::size_t height_good = ordered_pairs(rng, by_height, kPairs, height_example);

    std::string detail = "base " + count(base_good, kPairs, "pairs ordered") + ", height " +
                         count(height_good, kPairs, "pairs ordered");
    if (!height_example.empty()) detail += "; e.g. at " + height_example;
    if (!base_example.empty()) detail += "; e.g. at " + base_example;
    return {base_good == kPairs && height_good == kPairs, detail};
}

Outcome base_rendering() {
    std::mt19937_64 rng(1009);
    std::size_t good = 0;
    std::size_t total = 0;
    for (int i = 0; i < 1000; ++i) {
        const BigRational x = oracle::random_rational(rng, 100'000'000, 99'991);
        const std::size_t n = rng() % 41;
        for (unsigned base : {2u, 10u, 16u}) {
            ++total;
            const BasebExpansion e = to_base_b(x, base, n);
            const BigRational gap = (x - e.value()).abs();
            if (e.to_string() == oracle::long_division(x, base, n) && gap < BigRational(BigInt(1), ipow(BigInt(base), n))) {
                ++good;
            }
        }
    }
    return {good == total, count(good, total, "expansions match long division within base^-n")};
}

Outcome adaptive_prefixes() {
    const Term t = parse("[1.5++++0.5]");
    std::vector<std::string> shown;
    bool pass = true;
    for (std::size_t n : {10u, 20u, 30u}) {
        NumericContext ctx;
        ctx.digits = n;
        const std::string s = adaptive_render(t, ctx).to_string();
        pass = pass && s.size() == n + 2 && (shown.empty() || s.compare(0, shown.back().size(), shown.back()) == 0);
        shown.push_back(s);
    }
    return {pass, shown.back() + " extends " + shown[1] + " extends " + shown[0]};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"parser round trip", 10, parser_round_trip},
        {"worked trace chain", 1, trace_chain},
        {"middle-op accuracy", 30, middle_ops},
        {"farey table", 5, farey_table},
        {"hyperop identities", 0, identities},
        {"hyperop oracle values", 10, oracle_values},
        {"rational-height consistency", 60, rational_heights},
        {"monotonicity sampling", 60, monotonicity},
        {"base-b rendering", 10, base_rendering},
        {"adaptive precision", 30, adaptive_prefixes},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.limit_seconds == 0 || seconds <= c.limit_seconds;
        const bool pass = o.pass && in_time;
        failed += !pass;
        char limit[48] = "no limit";
        if (c.limit_seconds > 0) std::snprintf(limit, sizeof limit, "limit %.0f s", c.limit_seconds);
        std::printf("%s  %-28s %s [%.2f s, %s%s]\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), seconds, limit,
                    in_time ? "" : ", TOO SLOW");
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
