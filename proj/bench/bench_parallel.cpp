// OpenMP kernels against their serial references: Farey row generation and
// batch evaluation. With one core the pairs should run at the same speed.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "opaxiom/batch.hpp"
#include "opaxiom/farey.hpp"
#include "opaxiom/term.hpp"

using namespace opaxiom;

namespace {

void BM_FareyRow(benchmark::State& state) {
    const auto k = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(farey::farey_row(k));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(farey::farey_row_serial(k).size()));
}

void BM_FareyRowSerial(benchmark::State& state) {
    const auto k = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(farey::farey_row_serial(k));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(farey::farey_row_serial(k).size()));
}

// Mixed workload: exact arithmetic, powers and super-roots.
std::vector<Term> workload(std::size_t n) {
    const char* const shapes[] = {"[[1+[1+1]]----[1+1]]", "[1.5++++0.5]", "[[1+1]+++0.5]", "[[1+1]///[1+[1+1]]]",
                                  "[[1//[1+[1+1]]]+[1.25++[1+1]]]", "[3----[1+1]]"};
    std::vector<Term> terms;
    for (std::size_t i = 0; i < n; ++i) terms.push_back(parse(shapes[i % std::size(shapes)]));
    return terms;
}

NumericContext bench_context() {
    NumericContext ctx;
    ctx.digits = 30;
    return ctx;
}

void BM_Batch(benchmark::State& state) {
    const auto terms = workload(static_cast<std::size_t>(state.range(0)));
    const NumericContext ctx = bench_context();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_batch(terms, ctx));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BatchSerial(benchmark::State& state) {
    const auto terms = workload(static_cast<std::size_t>(state.range(0)));
    const NumericContext ctx = bench_context();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_batch_serial(terms, ctx));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_FareyRow)->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FareyRowSerial)->DenseRange(14, 20, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Batch)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchSerial)->Arg(48)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
