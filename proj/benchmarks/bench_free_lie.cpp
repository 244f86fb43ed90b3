// Microbenchmarks for the exact symbolic layer: series truncations of the
// group law, commutator-word logarithms, and approximant synthesis.

#include <benchmark/benchmark.h>

#include "lie/free_lie.hpp"
#include "lie/word_synth.hpp"
#include "lie/words.hpp"

namespace {

void BM_GroupLawSeries(benchmark::State &state) {
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        lie::FreeLieAlgebra L(2, order);
        lie::FreeLieElement z = lie::bch(L.generator(1), L.generator(2), order);
        benchmark::DoNotOptimize(z);
    }
}
BENCHMARK(BM_GroupLawSeries)->DenseRange(2, 6);

void BM_WordLog(benchmark::State &state) {
    const int order = static_cast<int>(state.range(0));
    lie::SynthesizedApproximant a = lie::synthesize(2, order);
    lie::FreeLieAlgebra L(2, order + 1);
    std::vector<lie::FreeLieElement> gens = {L.generator(1), L.generator(2)};
    for (auto _ : state) {
        lie::FreeLieElement v = lie::word_log(a.word, gens, order + 1);
        benchmark::DoNotOptimize(v);
    }
    state.counters["word_length"] = static_cast<double>(a.word.length());
}
BENCHMARK(BM_WordLog)->DenseRange(2, 4);

void BM_Synthesize(benchmark::State &state) {
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        lie::SynthesizedApproximant a = lie::synthesize(2, order);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_Synthesize)->DenseRange(2, 5);

}  // namespace

BENCHMARK_MAIN();
