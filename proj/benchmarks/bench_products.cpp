// Microbenchmarks for discretized product sets: the lattice-convolution fast
// path on structured flat sets, the hash path on curved backends, and bracket
// generation over a module action.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "lie/backends.hpp"
#include "lie/constructions.hpp"
#include "lie/delta_sets.hpp"

namespace {

std::vector<double> ball_point(std::mt19937_64 &rng, int dim, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<double> p(static_cast<std::size_t>(dim));
    for (;;) {
        double q = 0.0;
        for (auto &c : p) {
            c = u(rng);
            q += c * c;
        }
        if (q <= radius * radius) return p;
    }
}

lie::DeltaSet random_set(const lie::Backend &b, double delta, double radius,
                         int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back(ball_point(rng, b.algebra_dim(), radius));
    return lie::make_delta_set(b, delta, radius, pts);
}

// structured flat set: the convolution path collapses the stride and runs on
// a small dense box
void BM_TripleProductFlat(benchmark::State &state) {
    const int e = static_cast<int>(state.range(0));
    lie::APConfig cfg;
    cfg.d = 2;
    cfg.kappa = 0.75;
    cfg.delta = std::ldexp(1.0, -e);
    cfg.r = 1.0;
    lie::DeltaSet a = lie::arithmetic_progression_set(cfg);
    for (auto _ : state) {
        lie::DeltaSet aaa = lie::k_fold_product(a, 3);
        benchmark::DoNotOptimize(aaa);
    }
    state.counters["points"] = static_cast<double>(a.size());
}
BENCHMARK(BM_TripleProductFlat)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

// curved compact backend: products run pairwise through the group law
void BM_TripleProductCurved(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    lie::DeltaSet a = random_set(lie::Backend::su2(), std::ldexp(1.0, -5), 0.3, n, 17);
    for (auto _ : state) {
        lie::DeltaSet aaa = lie::k_fold_product(a, 3);
        benchmark::DoNotOptimize(aaa);
    }
}
BENCHMARK(BM_TripleProductCurved)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_GenerateBracket(benchmark::State &state) {
    const int steps = static_cast<int>(state.range(0));
    lie::Backend mod = lie::Backend::abelian(3);
    lie::Backend act = lie::Backend::su2();
    lie::DeltaSet pts = random_set(mod, 1.0 / 64.0, 0.5, 4, 23);
    lie::DeltaSet acting = random_set(act, 1.0 / 64.0, 0.5, 3, 29);
    lie::GenerationBudget budget;
    budget.steps = steps;
    for (auto _ : state) {
        lie::DeltaSet out = lie::generate_bracket(pts, acting, lie::ModuleAction::Adjoint, budget);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_GenerateBracket)->DenseRange(2, 4);

}  // namespace

BENCHMARK_MAIN();
