// Microbenchmarks for covering counts: single-scale cell counts, the greedy
// packing-based upper bound, and the full dyadic profile with its fit.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "lie/backends.hpp"
#include "lie/delta_sets.hpp"

namespace {

lie::DeltaSet random_set(const lie::Backend &b, double delta, double radius,
                         int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(n));
    const int d = b.algebra_dim();
    for (int i = 0; i < n;) {
        std::vector<double> p(static_cast<std::size_t>(d));
        double q = 0.0;
        for (auto &c : p) {
            c = u(rng);
            q += c * c;
        }
        if (q > radius * radius) continue;
        pts.push_back(std::move(p));
        ++i;
    }
    return lie::make_delta_set(b, delta, radius, pts);
}

void BM_CoveringNumber(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    lie::DeltaSet s = random_set(lie::Backend::sl2r(), 1.0 / 256.0, 0.8, n, 41);
    const double rho = 1.0 / 32.0;
    for (auto _ : state) {
        std::size_t c = lie::covering_number(s, rho);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_CoveringNumber)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_GreedyCovering(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    lie::DeltaSet s = random_set(lie::Backend::su2(), 1.0 / 256.0, 0.8, n, 43);
    const double rho = 1.0 / 16.0;
    for (auto _ : state) {
        std::size_t c = lie::greedy_covering_number(s, rho);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_GreedyCovering)->Arg(250)->Arg(500)->Arg(1000);

void BM_CoveringProfileFit(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    lie::DeltaSet s = random_set(lie::Backend::heis3(), 1.0 / 1024.0, 0.8, n, 47);
    for (auto _ : state) {
        lie::CoveringProfile prof = lie::covering_profile(s);
        lie::ProfileFit fit = lie::profile_fit(prof);
        benchmark::DoNotOptimize(fit);
    }
}
BENCHMARK(BM_CoveringProfileFit)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
