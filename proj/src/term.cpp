#include "opaxiom/term.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "opaxiom/error.hpp"

namespace opaxiom {

char Operator::symbol() const noexcept {
    switch (kind) {
        case Kind::Plus: return '+';
        case Kind::Minus: return '-';
        case Kind::Slash: return '/';
    }
    return '?';
}

std::string Operator::to_string() const { return std::string(rank, symbol()); }

std::string to_string(const NodePath& path) {
    if (path.empty()) return "root";
    std::string out;
    out.reserve(path.size());
    for (Side s : path) out.push_back(s == Side::Left ? 'L' : 'R');
    return out;
}

Term Term::node(Operator op, Term left, Term right) {
    if (op.rank == 0) throw std::invalid_argument("operator rank must be >= 1");
    return Term(std::make_shared<const Node>(Node{op, std::move(left), std::move(right)}));
}

const Operator& Term::op() const {
    if (!node_) throw std::logic_error("leaf has no operator");
    return node_->op;
}

const Term& Term::left() const {
    if (!node_) throw std::logic_error("leaf has no children");
    return node_->left;
}

const Term& Term::right() const {
    if (!node_) throw std::logic_error("leaf has no children");
    return node_->right;
}

const Term& Term::at(const NodePath& path) const {
    const Term* t = this;
    for (Side s : path) {
        if (t->is_leaf()) throw std::out_of_range("path leaves the term: " + to_string(path));
        t = s == Side::Left ? &t->left() : &t->right();
    }
    return *t;
}

std::size_t Term::node_count() const {
    if (is_leaf()) return 1;
    return 1 + left().node_count() + right().node_count();
}

std::size_t Term::internal_count() const {
    if (is_leaf()) return 0;
    return 1 + left().internal_count() + right().internal_count();
}

std::size_t Term::depth() const {
    if (is_leaf()) return 0;
    return 1 + std::max(left().depth(), right().depth());
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.is_leaf() || b.is_leaf()) return false;
    return a.op() == b.op() && a.left() == b.left() && a.right() == b.right();
}

// ---------------------------------------------------------------------------
// Literal desugaring

namespace {

constexpr unsigned kUnaryLiteralLimit = 16;

Term two() { return Term::node(plus(1), Term::leaf(), Term::leaf()); }

}  // namespace

Term integer_term(const BigInt& n) {
    if (n < 0) throw std::invalid_argument("integer_term: negative literal");
    if (n == 0) return Term::node(minus(1), Term::leaf(), Term::leaf());
    if (n <= kUnaryLiteralLimit) {
        Term t;
        for (unsigned long i = 1; i < n.get_ui(); ++i) t = Term::node(plus(1), t, Term::leaf());
        return t;
    }
    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    Term t;
    for (std::size_t i = bits - 1; i-- > 0;) {
        t = Term::node(plus(2), t, two());
        if (mpz_tstbit(n.get_mpz_t(), i)) t = Term::node(plus(1), t, Term::leaf());
    }
    return t;
}

namespace {

// Value of a term built only from +, ++ and the zero form [1-1].
std::optional<BigInt> additive_value(const Term& t) {
    if (t.is_leaf()) return BigInt(1);
    const Operator& op = t.op();
    if (op == minus(1) && t.left().is_leaf() && t.right().is_leaf()) return BigInt(0);
    if (op != plus(1) && op != plus(2)) return std::nullopt;
    auto l = additive_value(t.left());
    if (!l) return std::nullopt;
    auto r = additive_value(t.right());
    if (!r) return std::nullopt;
    return op.rank == 1 ? BigInt(*l + *r) : BigInt(*l * *r);
}

}  // namespace

std::optional<BigInt> as_integer_literal(const Term& term) {
    auto v = additive_value(term);
    if (!v) return std::nullopt;
    if (integer_term(*v) == term) return v;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

    Term parse_all() {
        skip_space();
        if (at_end()) throw ParseError(pos_, "empty input");
        Term t = operand(0);
        skip_space();
        if (!at_end()) throw ParseError(pos_, std::string("unexpected character '") + text_[pos_] + "'");
        return t;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_space() {
        while (!at_end()) {
            const char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    static bool is_op_symbol(char c) { return c == '+' || c == '-' || c == '/'; }

    Term operand(std::size_t depth) {
        skip_space();
        if (at_end()) throw ParseError(pos_, "expected operand, found end of input");
        const char c = peek();
        if (c == '[') return bracket(depth + 1);
        if (std::isdigit(static_cast<unsigned char>(c))) return literal();
        if (c == ']') throw ParseError(pos_, "expected operand, found ']'");
        if (is_op_symbol(c)) throw ParseError(pos_, std::string("expected operand, found '") + c + "'");
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    Term bracket(std::size_t depth) {
        if (depth > options_.max_depth) {
            throw ParseError(pos_, "nesting deeper than " + std::to_string(options_.max_depth));
        }
        ++pos_;  // '['
        Term lhs = operand(depth);
        skip_space();
        const Operator op = operator_run();
        Term rhs = operand(depth);
        skip_space();
        if (at_end()) throw ParseError(pos_, "unbalanced '[': expected ']'");
        if (peek() != ']') {
            throw ParseError(pos_, std::string("expected ']', found '") + peek() + "'");
        }
        ++pos_;
        return Term::node(op, std::move(lhs), std::move(rhs));
    }

    Operator operator_run() {
        if (at_end()) throw ParseError(pos_, "expected operator, found end of input");
        const char c = peek();
        if (!is_op_symbol(c)) {
            throw ParseError(pos_, std::string("expected operator, found '") + c + "'");
        }
        unsigned rank = 0;
        while (!at_end() && peek() == c) {
            ++rank;
            ++pos_;
        }
        if (!at_end() && is_op_symbol(peek())) {
            throw ParseError(pos_, std::string("mixed operator symbols '") + c + peek() + "'");
        }
        const Operator::Kind kind = c == '+'   ? Operator::Kind::Plus
                                    : c == '-' ? Operator::Kind::Minus
                                               : Operator::Kind::Slash;
        return {kind, rank};
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ - start > options_.max_literal_digits) {
            throw ParseError(start, "literal longer than " + std::to_string(options_.max_literal_digits) + " digits");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    Term literal() {
        const std::size_t start = pos_;
        const std::string whole = digits();
        if (at_end() || peek() != '.') return integer_term(BigInt(whole, 10));
        ++pos_;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
            throw ParseError(pos_, "expected digits after '.'");
        }
        const std::string frac = digits();
        if (whole.size() + frac.size() > options_.max_literal_digits) {
            throw ParseError(start, "literal longer than " + std::to_string(options_.max_literal_digits) + " digits");
        }
        const BigInt p(whole + frac, 10);
        const BigInt q = ipow(10, frac.size());
        return Term::node(minus(2), integer_term(p), integer_term(q));
    }

    std::string_view text_;
    const ParseOptions& options_;
    std::size_t pos_ = 0;
};

}  // namespace

Term parse(std::string_view text, const ParseOptions& options) {
    return Parser(text, options).parse_all();
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_canonical(const Term& t, std::string& out) {
    if (t.is_leaf()) {
        out.push_back('1');
        return;
    }
    out.push_back('[');
    render_canonical(t.left(), out);
    out.append(t.op().rank, t.op().symbol());
    render_canonical(t.right(), out);
    out.push_back(']');
}

// Number of decimal places if q is 10^k with k >= 1.
std::optional<std::size_t> decimal_places(const BigInt& q) {
    if (q < 10) return std::nullopt;
    const std::string s = q.get_str(10);
    if (s[0] != '1' || s.find_first_not_of('0', 1) != std::string::npos) return std::nullopt;
    return s.size() - 1;
}

void render_sugared(const Term& t, std::string& out) {
    if (auto v = as_integer_literal(t)) {
        out += v->get_str(10);
        return;
    }
    if (t.op() == minus(2)) {
        auto p = as_integer_literal(t.left());
        auto q = as_integer_literal(t.right());
        if (p && q) {
            if (auto places = decimal_places(*q)) {
                std::string digits = p->get_str(10);
                if (digits.size() <= *places) digits.insert(0, *places + 1 - digits.size(), '0');
                digits.insert(digits.size() - *places, ".");
                out += digits;
                return;
            }
        }
    }
    out.push_back('[');
    render_sugared(t.left(), out);
    out.append(t.op().rank, t.op().symbol());
    render_sugared(t.right(), out);
    out.push_back(']');
}

void inorder(const Term& t, NodePath& path, std::vector<NodePath>& out) {
    if (t.is_leaf()) return;
    path.push_back(Side::Left);
    inorder(t.left(), path, out);
    path.pop_back();
    out.push_back(path);
    path.push_back(Side::Right);
    inorder(t.right(), path, out);
    path.pop_back();
}

}  // namespace

std::string render(const Term& term, RenderStyle style) {
    std::string out;
    if (style == RenderStyle::Canonical) {
        render_canonical(term, out);
    } else {
        render_sugared(term, out);
    }
    return out;
}

std::vector<NodePath> traversal_order(const Term& term) {
    std::vector<NodePath> out;
    NodePath path;
    inorder(term, path, out);
    return out;
}

}  // namespace opaxiom
