#include <benchmark/benchmark.h>

#include "snnmap/mapper.hpp"
#include "snnmap/noc_sim.hpp"
#include "snnmap/partitioner.hpp"
#include "snnmap/synth.hpp"

namespace {

using namespace snnmap;

struct SimFixture {
    SpikeTrace trace;
    Partitioning part;
    Mapping map;
    MeshTopology mesh{5, 5};
};

// Arg selects the firing rate in percent; higher rate, more events.
SimFixture make_fixture(int rate_pct) {
    SimFixture f;
    const SynthResult net = gen_feedforward({640, 640}, ConnectivitySpec::random_spec(0.1),
            rate_pct / 100.0, 250, /*seed=*/21);
    f.trace = net.trace;
    const PartId k = 5;
    f.part = partition(net.graph, k, 256, /*seed=*/4);
    f.map = random_mapping(k, f.mesh, /*seed=*/8);
    return f;
}

void BM_Simulate(benchmark::State &state) {
    const SimFixture f = make_fixture(static_cast<int>(state.range(0)));
    SimConfig cfg;
    for (auto _ : state) {
        SimResult res = simulate(f.trace, f.part, f.map, f.mesh, cfg);
        benchmark::DoNotOptimize(res);
    }
    state.counters["events"] =
            benchmark::Counter(static_cast<double>(f.trace.events.size()),
                    benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SimulateCongested(benchmark::State &state) {
    const SimFixture f = make_fixture(5);
    SimConfig cfg;
    cfg.edge_capacity = state.range(0);
    cfg.injection_capacity = state.range(0);
    for (auto _ : state) {
        SimResult res = simulate(f.trace, f.part, f.map, f.mesh, cfg);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_SimulateCongested)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

} // namespace
