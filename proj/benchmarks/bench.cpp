#include "ggism/gale_shapley.hpp"
#include "ggism/instance.hpp"
#include "ggism/lp_rounding.hpp"
#include "ggism/rotations.hpp"
#include "ggism/weights.hpp"
#include "ggism/xp.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace ggism;

namespace {

/// The running 10x10 example (three rotations, five stable matchings).
Instance example_instance() {
    std::vector<std::vector<int>> men{
        {},
        {1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
        {2, 1, 3, 4, 5, 6, 7, 8, 9, 10},
        {3, 1, 2, 4, 5, 6, 7, 8, 9, 10},
        {7, 1, 2, 3, 6, 4, 5, 8, 9, 10},
        {6, 1, 2, 3, 7, 4, 5, 8, 9, 10},
        {4, 1, 2, 3, 5, 7, 6, 8, 9, 10},
        {5, 1, 2, 3, 4, 7, 6, 8, 9, 10},
        {8, 4, 5, 6, 10, 7, 1, 2, 3, 9},
        {10, 4, 6, 7, 9, 5, 1, 2, 3, 8},
        {9, 4, 5, 7, 8, 6, 1, 2, 3, 10},
    };
    std::vector<std::vector<int>> women{
        {},
        {1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
        {1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
        {1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
        {1, 2, 3, 7, 8, 9, 6, 4, 5, 10},
        {1, 2, 3, 6, 8, 9, 7, 4, 5, 10},
        {1, 2, 3, 4, 8, 9, 5, 6, 7, 10},
        {1, 2, 3, 5, 8, 9, 4, 6, 7, 10},
        {2, 10, 8, 7, 1, 3, 4, 5, 6, 9},
        {1, 2, 9, 10, 3, 4, 5, 6, 7, 8},
        {1, 2, 3, 4, 5, 6, 7, 10, 8, 9},
    };
    return Instance(std::move(men), std::move(women));
}

Instance random_instance(int n, unsigned seed) {
    std::mt19937 rng(seed);
    auto side = [&] {
        std::vector<std::vector<int>> prefs(n + 1);
        for (int i = 1; i <= n; ++i) {
            prefs[i].resize(n);
            std::iota(prefs[i].begin(), prefs[i].end(), 1);
            std::shuffle(prefs[i].begin(), prefs[i].end(), rng);
        }
        return prefs;
    };
    auto men = side();
    auto women = side();
    return Instance(std::move(men), std::move(women));
}

void BM_ManOptimal(benchmark::State& state) {
    Instance inst = random_instance(static_cast<int>(state.range(0)), 11);
    for (auto _ : state) {
        auto result = man_optimal(inst);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_ManOptimal)->Arg(10)->Arg(50)->Arg(200);

void BM_BuildPoset(benchmark::State& state) {
    Instance inst = random_instance(static_cast<int>(state.range(0)), 13);
    for (auto _ : state) {
        RotationPoset poset = build_poset(inst);
        benchmark::DoNotOptimize(poset);
    }
}
BENCHMARK(BM_BuildPoset)->Arg(10)->Arg(30)->Arg(60);

void BM_EnumerateStable(benchmark::State& state) {
    Instance inst = example_instance();
    RotationPoset poset = build_poset(inst);
    for (auto _ : state) {
        auto all = enumerate_stable(poset, inst);
        benchmark::DoNotOptimize(all);
    }
}
BENCHMARK(BM_EnumerateStable);

void BM_SolveLpFloat(benchmark::State& state) {
    Instance inst = example_instance();
    RotationPoset poset = build_poset(inst);
    Relaxation rel(inst, poset, DisutilityFunction::identity(), gini_weights(20));
    for (auto _ : state) {
        FractionalSolution f = solve_lp(rel, /*exact=*/false);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_SolveLpFloat);

void BM_XpSolveByK(benchmark::State& state) {
    Instance inst = example_instance();
    auto dfun = DisutilityFunction::identity();
    GgiWeights weights = head_weights(20, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        XpResult res = xp_solve(inst, dfun, weights);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_XpSolveByK)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
