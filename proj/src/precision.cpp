#include "opaxiom/precision.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "opaxiom/error.hpp"

namespace opaxiom {

namespace {

constexpr int kMaxAttempts = 12;
constexpr char kDigits[] = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";

using NodeValues = std::map<NodePath, Ball>;

class Evaluator {
public:
    Evaluator(const NumericContext& ctx, NodeValues* record) : cfg_(ctx.hyper), record_(record) {}

    Ball eval(const Term& t, NodePath& path, const BigRational& target) {
        if (t.is_leaf()) return Ball(1);
        BigRational child_target = target / BigRational(4);
        std::optional<Ball> l;
        std::optional<Ball> r;
        for (int attempt = 0;; ++attempt) {
            // Exact operands never need recomputing.
            if (!l || !l->is_exact()) l = child(t.left(), path, Side::Left, child_target);
            if (!r || !r->is_exact()) r = child(t.right(), path, Side::Right, child_target);
            BigRational shrink;
            try {
                Ball v = hyper::apply(t.op(), *l, *r, cfg_.with_target(target / BigRational(2)));
                if (v.radius() <= target) {
                    if (record_) (*record_)[path] = v;
                    return v;
                }
                shrink = pow2(-(floor_log2(v.radius() / target) + 2));
            } catch (PrecisionError& e) {
                // An operand straddles a point where the operation is
                // undefined or discontinuous; sharper operands may settle it.
                if (attempt + 1 >= kMaxAttempts || (l->is_exact() && r->is_exact())) {
                    if (!e.has_path()) e.set_path(to_string(path));
                    throw;
                }
                shrink = pow2(-16);
            } catch (Error& e) {
                if (!e.has_path()) e.set_path(to_string(path));
                throw;
            }
            if (attempt + 1 >= kMaxAttempts) {
                PrecisionError e("operands could not be made precise enough");
                e.set_path(to_string(path));
                throw e;
            }
            child_target *= shrink;
        }
    }

private:
    Ball child(const Term& t, NodePath& path, Side side, const BigRational& target) {
        path.push_back(side);
        Ball v = eval(t, path, target);
        path.pop_back();
        return v;
    }

    hyper::HyperConfig cfg_;
    NodeValues* record_;
};

Ball run(const Term& term, const NumericContext& ctx, NodeValues* record) {
    ctx.validate();
    NodePath path;
    Evaluator ev(ctx, record);
    return ev.eval(term, path, ctx.target());
}

void postorder(const Term& t, NodePath& path, std::vector<NodePath>& out) {
    if (t.is_leaf()) return;
    path.push_back(Side::Left);
    postorder(t.left(), path, out);
    path.back() = Side::Right;
    postorder(t.right(), path, out);
    path.pop_back();
    out.push_back(path);
}

// Canonical rendering with some subterms replaced by text.
void render_display(const Term& t, NodePath& path, const std::map<NodePath, std::string>& done, std::string& out) {
    if (auto it = done.find(path); it != done.end()) {
        out += it->second;
        return;
    }
    if (t.is_leaf()) {
        out += '1';
        return;
    }
    out += '[';
    path.push_back(Side::Left);
    render_display(t.left(), path, done, out);
    out += t.op().to_string();
    path.back() = Side::Right;
    render_display(t.right(), path, done, out);
    path.pop_back();
    out += ']';
}

std::string display(const Term& t, const std::map<NodePath, std::string>& done) {
    std::string out;
    NodePath path;
    render_display(t, path, done, out);
    return out;
}

// Exact integers render bare, everything else with ctx.digits digits.
std::string render_node(const Term& sub, const Ball& v, const NumericContext& ctx) {
    if (v.is_exact()) {
        const std::size_t n = v.center().is_integer() ? 0 : ctx.digits;
        return to_base_b(v.center(), ctx.base, n).to_string();
    }
    try {
        return to_base_b(EvalResult{v, {}}, ctx).to_string();
    } catch (const PrecisionError&) {
        NumericContext c = ctx;
        c.trace = false;
        return adaptive_render(sub, c).to_string();
    }
}

std::vector<TraceEvent> build_trace(const Term& term, const NodeValues& values, const NumericContext& ctx) {
    std::vector<NodePath> order;
    NodePath scratch;
    postorder(term, scratch, order);
    std::vector<TraceEvent> events;
    std::map<NodePath, std::string> done;
    std::string current = display(term, done);
    for (const NodePath& path : order) {
        const auto it = values.find(path);
        if (it == values.end()) throw std::logic_error("trace: node " + to_string(path) + " was never evaluated");
        done[path] = render_node(term.at(path), it->second, ctx);
        std::string next = display(term, done);
        events.push_back(TraceEvent{events.size() + 1, path, current, next});
        current = std::move(next);
    }
    return events;
}

bool negative_digits_equal(const BigRational& lo, const BigRational& hi, unsigned base, std::size_t n) {
    if ((lo.sign() < 0) != (hi.sign() < 0)) return false;
    const BigRational scale(ipow(BigInt(base), n));
    return floor(lo.abs() * scale) == floor(hi.abs() * scale);
}

}  // namespace

void NumericContext::validate() const {
    if (base < 2 || base > 36) throw std::invalid_argument("base must be in [2, 36], got " + std::to_string(base));
}

BigRational NumericContext::target() const {
    return BigRational(BigInt(1), ipow(BigInt(base), digits + guard));
}

std::string BasebExpansion::to_string() const {
    std::string out;
    if (negative) out += '-';
    for (unsigned d : integer_digits) out += kDigits[d];
    if (!fractional_digits.empty()) {
        out += '.';
        for (unsigned d : fractional_digits) out += kDigits[d];
    }
    return out;
}

BigRational BasebExpansion::value() const {
    BigInt v = 0;
    for (unsigned d : integer_digits) v = v * base + d;
    for (unsigned d : fractional_digits) v = v * base + d;
    BigRational out(v, ipow(BigInt(base), fractional_digits.size()));
    return negative ? -out : out;
}

BasebExpansion to_base_b(const BigRational& value, unsigned base, std::size_t digits) {
    if (base < 2 || base > 36) throw std::invalid_argument("base must be in [2, 36], got " + std::to_string(base));
    BasebExpansion out;
    out.base = base;
    out.negative = value.sign() < 0;
    const BigInt num = ::abs(value.num());
    const BigInt& den = value.den();
    BigInt whole;
    BigInt rest;
    mpz_fdiv_qr(whole.get_mpz_t(), rest.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());

    // Integer part by repeated quotient and remainder.
    out.integer_digits.clear();
    while (whole > 0) {
        const unsigned long d = mpz_fdiv_q_ui(whole.get_mpz_t(), whole.get_mpz_t(), base);
        out.integer_digits.push_back(static_cast<unsigned>(d));
    }
    if (out.integer_digits.empty()) out.integer_digits.push_back(0);
    std::reverse(out.integer_digits.begin(), out.integer_digits.end());

    // Fractional part by a_n = floor(b f_n).
    out.fractional_digits.reserve(digits);
    for (std::size_t i = 0; i < digits; ++i) {
        rest *= base;
        BigInt d;
        mpz_fdiv_qr(d.get_mpz_t(), rest.get_mpz_t(), rest.get_mpz_t(), den.get_mpz_t());
        out.fractional_digits.push_back(static_cast<unsigned>(d.get_ui()));
    }
    return out;
}

BasebExpansion to_base_b(const EvalResult& value, const NumericContext& ctx) {
    ctx.validate();
    if (value.is_exact()) return to_base_b(value.value.center(), ctx.base, ctx.digits);
    const BigRational lo = value.value.lower();
    const BigRational hi = value.value.upper();
    if (!negative_digits_equal(lo, hi, ctx.base, ctx.digits)) {
        throw PrecisionError("cannot certify " + std::to_string(ctx.digits) + " digits of " + value.value.to_string());
    }
    return to_base_b(value.value.center(), ctx.base, ctx.digits);
}

EvalResult evaluate(const Term& term, const NumericContext& ctx) {
    EvalResult out;
    if (!ctx.trace) {
        out.value = run(term, ctx, nullptr);
        return out;
    }
    NodeValues values;
    out.value = run(term, ctx, &values);
    out.trace = build_trace(term, values, ctx);
    return out;
}

Rendering adaptive_evaluate(const Term& term, const NumericContext& ctx) {
    NumericContext c = ctx;
    std::optional<EvalResult> last;
    std::string reason;
    for (std::size_t d = 0; d <= ctx.max_doublings; ++d) {
        try {
            last = evaluate(term, c);
            BasebExpansion digits = to_base_b(*last, c);
            return Rendering{std::move(*last), std::move(digits), c.guard};
        } catch (const PrecisionError& e) {
            reason = e.what();
            if (e.has_path()) reason += " at node " + e.path();
        }
        c.guard = std::max<std::size_t>(c.guard, 1) * 2;
    }
    std::string msg = "digits not certified after " + std::to_string(ctx.max_doublings) + " guard doublings";
    if (last) {
        char radius[32];
        std::snprintf(radius, sizeof radius, "%.3g", last->value.radius().to_double());
        msg += ": value " + to_base_b(last->value.center(), ctx.base, ctx.digits).to_string() + " with radius " + radius;
    } else {
        msg += ": " + reason;
    }
    throw PrecisionError(msg);
}

BasebExpansion adaptive_render(const Term& term, const NumericContext& ctx) {
    NumericContext c = ctx;
    c.trace = false;
    return adaptive_evaluate(term, c).expansion;
}

std::vector<TraceEvent> trace_reduce(const Term& term, const NumericContext& ctx) {
    NumericContext c = ctx;
    c.trace = true;
    return evaluate(term, c).trace;
}

}  // namespace opaxiom
