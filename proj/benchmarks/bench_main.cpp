#include <benchmark/benchmark.h>

#include "silab/approx_inverse.hpp"
#include "silab/dynamics.hpp"
#include "silab/families.hpp"
#include "silab/path_tree.hpp"
#include "silab/rng.hpp"

using namespace silab;

namespace {

Matrix random_symmetric(int n, uint64_t seed) {
    Rng rng(seed);
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = rng.symmetric_unit();
            a(i, j) = v;
            a(j, i) = v;
        }
    return a;
}

}  // namespace

static void BM_JacobiEig(benchmark::State& state) {
    Matrix a = random_symmetric(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(eig_sym(a).lambda_max());
}
BENCHMARK(BM_JacobiEig)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

static void BM_EnumerateSupport(benchmark::State& state) {
    Multigraph t = random_tree(static_cast<int>(state.range(0)), 5);
    ModelInstance m(ModelKind::Hardcore, t, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_support(m).size());
}
BENCHMARK(BM_EnumerateSupport)->Arg(12)->Arg(16)->Arg(20);

static void BM_TreeInfluenceFast(benchmark::State& state) {
    Multigraph t = random_tree(static_cast<int>(state.range(0)), 7);
    ModelInstance m(ModelKind::MonomerDimer, t, 1.5);
    for (auto _ : state) benchmark::DoNotOptimize(tree_influence_fast(m).entries.rows());
}
BENCHMARK(BM_TreeInfluenceFast)->Arg(50)->Arg(100)->Arg(200);

static void BM_PathTree(benchmark::State& state) {
    // complete graph: the worst case for self-avoiding path growth
    const int n = static_cast<int>(state.range(0));
    Multigraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    for (auto _ : state)
        benchmark::DoNotOptimize(path_tree(g, 0).tree.graph().n_vertices());
}
BENCHMARK(BM_PathTree)->Arg(6)->Arg(7)->Arg(8);

static void BM_HardcoreRecursion(benchmark::State& state) {
    RootedTree t(complete_ary_tree(3, static_cast<int>(state.range(0))), 0);
    for (auto _ : state) {
        auto st = hardcore_recursion(t, 30.0);
        benchmark::DoNotOptimize(st.beta.back());
    }
}
BENCHMARK(BM_HardcoreRecursion)->Arg(6)->Arg(8)->Arg(10);

static void BM_Certificate(benchmark::State& state) {
    Multigraph t = random_tree(static_cast<int>(state.range(0)), 11);
    ModelInstance m(ModelKind::MonomerDimer, t, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(certificate(m).bound);
}
BENCHMARK(BM_Certificate)->Arg(8)->Arg(12);

static void BM_SpectralGap(benchmark::State& state) {
    Multigraph t = random_tree(static_cast<int>(state.range(0)), 13);
    ModelInstance m(ModelKind::Hardcore, t, 1.0);
    GlauberChain c = build_chain(m);
    for (auto _ : state) benchmark::DoNotOptimize(spectral_gap(c));
}
BENCHMARK(BM_SpectralGap)->Arg(8)->Arg(10)->Arg(12);

static void BM_ParallelCycle(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            parallel_cycle_lower_bound(static_cast<int>(state.range(0)), 40).lambda_max);
}
BENCHMARK(BM_ParallelCycle)->Arg(4)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
