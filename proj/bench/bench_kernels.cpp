// Parallel kernels against their serial references.
//
//   ./build/bench/bench_kernels --benchmark_filter=Cover

#include "prvass/explorer.hpp"
#include "prvass/io.hpp"
#include "prvass/reference.hpp"
#include "prvass/weak.hpp"

#include <benchmark/benchmark.h>

using namespace prvass;

namespace {

const std::vector<DeltaSymbol> kSequence{{DeltaKind::mult, 3}, {DeltaKind::div, 2},
                                         {DeltaKind::test, 3}};

void BM_Prop1_Reference(benchmark::State &state) {
    const auto domain = static_cast<Value>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::check_two_approximations(kSequence, domain));
}

void BM_Prop1_Kernel(benchmark::State &state) {
    const auto domain = static_cast<Value>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(check_two_approximations(kSequence, domain));
}

struct SwapSystem {
    CompiledSystem cs = compile(parse_minsky(read_file(CORPUS_DIR "/swap.minsky")));
    System sys{cs.system};
    Configuration start{sys.state(cs.start), {}, 0};
    StateId target = sys.state(cs.cover_target);
};

const SwapSystem &swap_system() {
    static const SwapSystem s;
    return s;
}

void BM_Cover_Reference(benchmark::State &state) {
    const auto &s = swap_system();
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::bounded_cover(s.sys, s.start, s.target, Bounds{}));
}

void BM_Cover_Parallel(benchmark::State &state) {
    const auto &s = swap_system();
    SearchOptions opts;
    opts.threads = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(bounded_cover(s.sys, s.start, s.target, Bounds{}, opts));
}

}  // namespace

BENCHMARK(BM_Prop1_Reference)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Prop1_Kernel)->Arg(8)->Arg(16)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cover_Reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cover_Parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
