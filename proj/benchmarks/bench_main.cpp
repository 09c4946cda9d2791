#include "spinlab/enumeration.hpp"
#include "spinlab/graph.hpp"
#include "spinlab/moment_formulas.hpp"
#include "spinlab/moments.hpp"
#include "spinlab/phase_diagram.hpp"
#include "spinlab/spin_model.hpp"
#include "spinlab/ssc.hpp"
#include "spinlab/tree_recursion.hpp"

#include <benchmark/benchmark.h>

using namespace spinlab;

static void BM_MultistartFixpoints(benchmark::State& state) {
    const auto model = SpinModel::potts(3, 0.1);
    const int starts = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(multistart_fixpoints(model, 6, starts, 1));
    state.SetItemsProcessed(state.iterations() * starts);
}
BENCHMARK(BM_MultistartFixpoints)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_InducedNorm(benchmark::State& state) {
    const auto model = SpinModel::colorings(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(induced_norm(model.B(), 5));
}
BENCHMARK(BM_InducedNorm)->Arg(3)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_DominantPhases(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dominant_phases(q, 2 * q, 0.0));
}
BENCHMARK(BM_DominantPhases)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

// Exhaustive sums grow like q^(2n + r); keep these tiny.
static void BM_ExactPartition(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto g = sample_graph(n, 0, 3, 7);
    const auto model = SpinModel::potts(3, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(exact_partition(g, model));
    state.SetComplexityN(n);
}
BENCHMARK(BM_ExactPartition)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_CycleCounts(benchmark::State& state) {
    const auto g = sample_graph(static_cast<int>(state.range(0)), 0, 5, 3);
    for (auto _ : state) benchmark::DoNotOptimize(cycle_counts(g, 8));
}
BENCHMARK(BM_CycleCounts)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_FirstMomentCheck(benchmark::State& state) {
    const auto model = SpinModel::colorings(3);
    for (auto _ : state) benchmark::DoNotOptimize(check_moment(model, 3, 3, 1));
}
BENCHMARK(BM_FirstMomentCheck)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
