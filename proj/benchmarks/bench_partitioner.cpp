#include <benchmark/benchmark.h>

#include "snnmap/partitioner.hpp"
#include "snnmap/pipeline.hpp"
#include "snnmap/synth.hpp"

namespace {

using namespace snnmap;

// Two equal layers, 10% connectivity; arg is the per-layer width.
SnnGraph feedforward_graph(int layer) {
    return gen_feedforward({layer, layer}, ConnectivitySpec::random_spec(0.1), 0.1, 200,
            /*seed=*/7)
            .graph;
}

void BM_Coarsen(benchmark::State &state) {
    const SnnGraph g = feedforward_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto levels = coarsen(g, 150, /*seed=*/1);
        benchmark::DoNotOptimize(levels);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Coarsen)->Arg(160)->Arg(640)->Arg(1280)->Complexity();

void BM_Partition(benchmark::State &state) {
    const int layer = static_cast<int>(state.range(0));
    const SnnGraph g = feedforward_graph(layer);
    const PartId k = 5;
    const Weight capacity = (g.num_neurons() + k - 1) / k + 8;
    for (auto _ : state) {
        Partitioning part = partition(g, k, capacity, /*seed=*/3);
        benchmark::DoNotOptimize(part);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Partition)->Arg(160)->Arg(640)->Arg(1280)->Complexity();

void BM_Refinement(benchmark::State &state) {
    const SnnGraph g = feedforward_graph(static_cast<int>(state.range(0)));
    const PartId k = 5;
    const Weight capacity = (g.num_neurons() + k - 1) / k + 8;
    const Partitioning init = random_balanced_partition(g.num_neurons(), k, capacity, 5);
    for (auto _ : state) {
        std::vector<PartId> assign = init.assignment;
        const Weight cut = refine_level(g, assign, k, capacity, kDefaultUndoWindow);
        benchmark::DoNotOptimize(cut);
    }
}
BENCHMARK(BM_Refinement)->Arg(160)->Arg(640);

} // namespace
