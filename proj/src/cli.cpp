#include "opaxiom/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "opaxiom/batch.hpp"
#include "opaxiom/error.hpp"
#include "opaxiom/farey.hpp"
#include "opaxiom/hyperop.hpp"
#include "opaxiom/precision.hpp"
#include "opaxiom/term.hpp"

namespace opaxiom::cli {

namespace {

using json = nlohmann::ordered_json;

struct Settings {
    unsigned base = 10;
    std::size_t digits = 20;
    std::size_t guard = 10;
    std::string format = "plain";
    bool trace = false;
};

NumericContext context(const Settings& s) {
    NumericContext c;
    c.base = s.base;
    c.digits = s.digits;
    c.guard = s.guard;
    c.trace = s.trace;
    return c;
}

int status_of(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return kParseFailure;
        case ErrorKind::Domain: return kDomainFailure;
        default: return kNumericFailure;
    }
}

// "1.23e-45" for any positive rational, however small.
std::string scientific(const BigRational& r) {
    if (r.is_zero()) return "0";
    const double l10 = approx_log2(r) * std::log10(2.0);
    double e = std::floor(l10);
    double m = std::pow(10.0, l10 - e);
    if (m >= 9.995) {
        m /= 10;
        e += 1;
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2fe%+.0f", m, e);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct Outcome {
    int status = kOk;
    json record;
    std::vector<std::string> lines;
    std::string diagnostic;
};

Outcome success(const std::string& input, const Term& term, const Settings& s, const std::string& value, bool exact,
                const BigRational& radius, const std::vector<TraceEvent>* trace) {
    Outcome o;
    o.record["input"] = input;
    o.record["canonical"] = render(term);
    o.record["value"] = value;
    o.record["radius"] = scientific(radius);
    o.record["digits"] = s.digits;
    o.record["base"] = s.base;
    o.record["exact"] = exact;
    if (trace) {
        // The last event is the value itself, printed separately.
        json chain = json::array();
        for (std::size_t i = 0; i + 1 < trace->size(); ++i) {
            chain.push_back((*trace)[i].after);
            o.lines.push_back((*trace)[i].after);
        }
        o.record["trace"] = std::move(chain);
    }
    o.lines.push_back(value);
    return o;
}

Outcome failure(const std::string& input, ErrorKind kind, const std::string& message, const std::string& where,
                const json& location) {
    Outcome o;
    o.status = status_of(kind);
    o.record["input"] = input;
    json e;
    e["kind"] = to_string(kind);
    e["message"] = message;
    if (!location.is_null()) e.update(location);
    o.record["error"] = std::move(e);
    o.diagnostic = std::string(to_string(kind)) + where + ": " + message;
    return o;
}

Outcome parse_failure(const std::string& input, const ParseError& e) {
    return failure(input, ErrorKind::Parse, e.what(), " at offset " + std::to_string(e.offset()),
                   json{{"offset", e.offset()}});
}

Outcome eval_failure(const std::string& input, ErrorKind kind, const std::string& message, const std::string& path) {
    if (path.empty()) return failure(input, kind, message, "", json());
    return failure(input, kind, message, " at node " + path, json{{"path", path}});
}

Outcome evaluate_text(const std::string& input, const Settings& s) {
    Term term;
    try {
        term = parse(input);
    } catch (const ParseError& e) {
        return parse_failure(input, e);
    }
    try {
        const Rendering r = adaptive_evaluate(term, context(s));
        return success(input, term, s, r.expansion.to_string(), r.result.is_exact(), r.result.value.radius(),
                       s.trace ? &r.result.trace : nullptr);
    } catch (const Error& e) {
        return eval_failure(input, e.kind(), e.what(), e.path());
    }
}

// Parses everything, then renders the parsed terms as one parallel batch.
std::vector<Outcome> evaluate_all(const std::vector<std::string>& inputs, const Settings& s) {
    if (s.trace) {
        std::vector<Outcome> out;
        for (const auto& in : inputs) out.push_back(evaluate_text(in, s));
        return out;
    }
    std::vector<Outcome> out(inputs.size());
    std::vector<Term> terms;
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        try {
            terms.push_back(parse(inputs[i]));
            slots.push_back(i);
        } catch (const ParseError& e) {
            out[i] = parse_failure(inputs[i], e);
        }
    }
    const std::vector<BatchResult> results = evaluate_batch(terms, context(s));
    for (std::size_t j = 0; j < results.size(); ++j) {
        const std::size_t i = slots[j];
        const BatchResult& r = results[j];
        out[i] = r.ok ? success(inputs[i], terms[j], s, r.text, r.exact, r.radius, nullptr)
                      : eval_failure(inputs[i], r.kind, r.message, r.path);
    }
    return out;
}

void emit(const Outcome& o, const Settings& s, std::ostream& out, std::ostream& err, const std::string& label) {
    if (s.format == "json") {
        out << o.record.dump() << '\n';
    } else {
        for (const auto& line : o.lines) out << line << '\n';
    }
    if (!o.diagnostic.empty()) err << "error: " << label << o.diagnostic << '\n';
}

std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        out.push_back(t);
    }
    return out;
}

int run_eval(std::vector<std::string> inputs, const std::string& file, const Settings& s, std::ostream& out,
             std::ostream& err) {
    bool from_file = false;
    if (!file.empty()) {
        std::ifstream f(file);
        if (!f) {
            err << "error: cannot open " << file << '\n';
            return kParseFailure;
        }
        for (auto& line : read_lines(f)) inputs.push_back(std::move(line));
        from_file = true;
    }
    if (inputs.empty()) {
        err << "error: nothing to evaluate\n";
        return kParseFailure;
    }
    const std::vector<Outcome> outcomes = evaluate_all(inputs, s);
    int status = kOk;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const std::string label = from_file || inputs.size() > 1 ? "expression " + std::to_string(i + 1) + ": " : "";
        emit(outcomes[i], s, out, err, label);
        status = std::max(status, outcomes[i].status);
    }
    return status;
}

bool parse_number(const std::string& text, std::size_t& value) {
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    return ec == std::errc() && ptr == end;
}

// Returns false on :quit.
bool meta_command(const std::string& line, Settings& s, std::ostream& out, std::ostream& err) {
    std::istringstream words(line);
    std::string cmd, arg;
    words >> cmd >> arg;
    std::size_t n = 0;
    if (cmd == ":quit" || cmd == ":q" || cmd == ":exit") return false;
    if (cmd == ":base") {
        if (!parse_number(arg, n) || n < 2 || n > 36) {
            err << "error: :base needs an integer in [2, 36]\n";
        } else {
            s.base = static_cast<unsigned>(n);
        }
    } else if (cmd == ":digits" || cmd == ":guard") {
        if (!parse_number(arg, n)) {
            err << "error: " << cmd << " needs a non-negative integer\n";
        } else {
            (cmd == ":digits" ? s.digits : s.guard) = n;
        }
    } else if (cmd == ":format") {
        if (arg != "plain" && arg != "json") {
            err << "error: :format is plain or json\n";
        } else {
            s.format = arg;
        }
    } else if (cmd == ":trace") {
        if (arg != "on" && arg != "off") {
            err << "error: :trace is on or off\n";
        } else {
            s.trace = arg == "on";
        }
    } else if (cmd == ":help") {
        out << ":base N  :digits N  :guard N  :format plain|json  :trace on|off  :quit\n";
    } else {
        err << "error: unknown command " << cmd << " (try :help)\n";
    }
    return true;
}

int run_repl(Settings s, std::istream& in, std::ostream& out, std::ostream& err, bool interactive) {
    std::string line;
    for (;;) {
        if (interactive) out << "> " << std::flush;
        if (!std::getline(in, line)) break;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t[0] == ':') {
            if (!meta_command(t, s, out, err)) break;
            continue;
        }
        emit(evaluate_text(t, s), s, out, err, "");
    }
    return kOk;
}

int run_farey(unsigned k, const Settings& s, std::ostream& out, std::ostream& err) {
    try {
        const auto row = farey::farey_row(k);
        if (s.format == "json") {
            json entries = json::array();
            for (const auto& e : row) entries.push_back(std::to_string(e.top) + "/" + std::to_string(e.bottom));
            out << json{{"row", k}, {"entries", std::move(entries)}}.dump() << '\n';
        } else {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i].top << '/' << row[i].bottom;
            out << '\n';
        }
        return kOk;
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return status_of(e.kind());
    }
}

// Random well-formed term with at most `depth` levels.
Term random_term(std::mt19937_64& rng, unsigned depth) {
    if (depth == 0 || rng() % 3 == 0) return Term::leaf();
    static constexpr Operator::Kind kinds[] = {Operator::Kind::Plus, Operator::Kind::Minus, Operator::Kind::Slash};
    const Operator op(kinds[rng() % 3], static_cast<unsigned>(1 + rng() % 6));
    return Term::node(op, random_term(rng, depth - 1), random_term(rng, depth - 1));
}

int run_selftest(std::ostream& out) {
    int passed = 0;
    int failed = 0;
    auto check = [&](const std::string& name, auto&& body) {
        try {
            if (body()) {
                ++passed;
                return;
            }
            out << "FAIL " << name << '\n';
        } catch (const std::exception& e) {
            out << "FAIL " << name << ": " << e.what() << '\n';
        }
        ++failed;
    };

    std::mt19937_64 rng(20240601);
    check("parse/render round trip", [&] {
        for (int i = 0; i < 500; ++i) {
            const Term t = random_term(rng, 8);
            if (!(parse(render(t)) == t)) return false;
        }
        return true;
    });

    hyper::HyperConfig cfg;
    cfg.target = pow2(-40);
    const BigRational bases[] = {BigRational(3, 2), BigRational(2), BigRational(7, 3)};
    for (unsigned r = 4; r <= 6; ++r) {
        for (const auto& a : bases) {
            const std::string tag = " rank " + std::to_string(r) + " a=" + a.to_string();
            check("forward(a, 0) = 1" + tag, [&] { return hyper::hyper_forward(r, a, BigRational(0), cfg) == Ball(1); });
            check("forward(a, 1) = a" + tag, [&] { return hyper::hyper_forward(r, a, BigRational(1), cfg) == Ball(a); });
            check("forward(1, b) = 1" + tag, [&] { return hyper::hyper_forward(r, Ball(1), a, cfg) == Ball(1); });
            check("inverse_minus(a, 1) = a" + tag,
                  [&] { return hyper::hyper_inverse_minus(r, a, BigRational(1), cfg) == Ball(a); });
        }
    }
    for (const auto& x : bases) {
        check("super-root round trip x=" + x.to_string(), [&] {
            const Ball y = hyper::hyper_forward(4, x, BigRational(2), cfg);
            return hyper::hyper_inverse_minus(4, y, BigRational(2), cfg).contains(x);
        });
    }
    check("super-log round trip 2^^3", [&] {
        const Ball y = hyper::hyper_forward(4, Ball(2), BigRational(3), cfg);
        return hyper::hyper_inverse_slash(4, y, Ball(2), cfg).contains(BigRational(3));
    });
    check("23/4 in base 2", [&] { return to_base_b(BigRational(23, 4), 2, 2).to_string() == "101.11"; });
    check("trace of x^x = 3", [&] {
        NumericContext c;
        c.digits = 8;
        const auto ev = trace_reduce(parse("[[1+[1+1]]----[1+1]]"), c);
        return ev.size() == 4 && ev[2].after == "[3----2]" && ev[3].after == "1.82545502";
    });

    out << "selftest: " << passed << " passed, " << failed << " failed\n";
    return failed == 0 ? kOk : kSelftestFailure;
}

void add_common(CLI::App* sub, Settings& s) {
    sub->add_option("--base", s.base, "Output radix")->check(CLI::Range(2u, 36u))->capture_default_str();
    sub->add_option("--digits", s.digits, "Fractional digits")->capture_default_str();
    sub->add_option("--guard", s.guard, "Guard digits of working precision")->capture_default_str();
    sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"plain", "json"}))->capture_default_str();
    sub->add_flag("--trace", s.trace, "Print each reduction step");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        bool interactive) {
    CLI::App app{"Evaluate Operator Axiom bracket-notation terms", "opaxiom"};
    app.require_subcommand(1);
    Settings s;

    std::vector<std::string> exprs;
    std::string file;
    auto* eval = app.add_subcommand("eval", "Evaluate expressions and print certified digits");
    // Expressions are taken from the leftovers: CLI11 would read a bracketed
    // positional as an array literal.
    eval->allow_extras();
    eval->footer("Positional arguments are terms such as [[1+1]+++[1+1]]");
    eval->add_option("-f,--file", file, "Evaluate every line of a file");
    add_common(eval, s);

    std::string traced;
    auto* trace = app.add_subcommand("trace", "Print each reduction step, then the value");
    trace->add_option("expression", traced, "Term to reduce")->required();
    add_common(trace, s);

    auto* repl = app.add_subcommand("repl", "Read expressions line by line");
    add_common(repl, s);

    unsigned row = 0;
    auto* farey = app.add_subcommand("farey", "Print row k of the Farey table");
    farey->add_option("k", row, "Row index, from 1")->required();
    farey->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"plain", "json"}));

    auto* selftest = app.add_subcommand("selftest", "Run the built-in identity and round-trip checks");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        // --help and --version exit 0; every usage error is a parse failure.
        return app.exit(e, out, err) == 0 ? kOk : kParseFailure;
    }

    try {
        if (*eval) {
            exprs = eval->remaining();
            for (const auto& x : exprs) {
                if (!x.empty() && x[0] == '-') {
                    err << "error: unknown option " << x << "\n";
                    return kParseFailure;
                }
            }
            return run_eval(exprs, file, s, out, err);
        }
        if (*trace) {
            s.trace = true;
            return run_eval({traced}, "", s, out, err);
        }
        if (*repl) return run_repl(s, in, out, err, interactive);
        if (*farey) return run_farey(row, s, out, err);
        if (*selftest) return run_selftest(out);
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << '\n';
        return kNumericFailure;
    }
    return kOk;
}

}  // namespace opaxiom::cli
