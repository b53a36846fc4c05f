#include "opaxiom/batch.hpp"

#include <cstddef>
#include <exception>

namespace opaxiom {

namespace {

BatchResult render_one(const Term& term, const NumericContext& ctx) {
    BatchResult out;
    try {
        NumericContext c = ctx;
        c.trace = false;
        const Rendering r = adaptive_evaluate(term, c);
        out.text = r.expansion.to_string();
        out.exact = r.result.is_exact();
        out.radius = r.result.value.radius();
        out.ok = true;
    } catch (const Error& e) {
        out.kind = e.kind();
        out.message = e.what();
        out.path = e.path();
    } catch (const std::exception& e) {
        // Nothing may escape a parallel region.
        out.kind = ErrorKind::Resource;
        out.message = e.what();
    }
    return out;
}

}  // namespace

std::vector<BatchResult> evaluate_batch_serial(const std::vector<Term>& terms, const NumericContext& ctx) {
    std::vector<BatchResult> out;
    out.reserve(terms.size());
    for (const Term& t : terms) out.push_back(render_one(t, ctx));
    return out;
}

std::vector<BatchResult> evaluate_batch(const std::vector<Term>& terms, const NumericContext& ctx) {
    ctx.validate();
    std::vector<BatchResult> out(terms.size());
    const auto n = static_cast<std::ptrdiff_t>(terms.size());
    // Term costs vary by orders of magnitude, so hand them out one at a time.
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = render_one(terms[i], ctx);
    return out;
}

}  // namespace opaxiom
