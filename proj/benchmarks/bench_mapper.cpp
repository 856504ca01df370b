#include <benchmark/benchmark.h>

#include <random>

#include "snnmap/mapper.hpp"

namespace {

using namespace snnmap;

CommMatrix dense_comm(PartId k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> cnt(0, 300);
    CommMatrix c(k);
    for (PartId a = 0; a < k; ++a) {
        for (PartId b = 0; b < k; ++b) {
            if (a != b) c.at(a, b) = cnt(rng);
        }
    }
    return c;
}

void run_search(benchmark::State &state, MapAlgorithm alg) {
    const PartId k = static_cast<PartId>(state.range(0));
    const CommMatrix comm = dense_comm(k, 11);
    const std::int64_t len = std::max<std::int64_t>(comm.total(), 1);
    const MeshTopology mesh{5, 5};
    SearchConfig cfg;
    cfg.algorithm = alg;
    cfg.budget.evaluations = 20000;
    cfg.seed = 2;
    for (auto _ : state) {
        SearchResult res = search(comm, len, mesh, cfg);
        benchmark::DoNotOptimize(res);
    }
    state.counters["evals"] = benchmark::Counter(20000, benchmark::Counter::kIsRate);
}

void BM_MapSa(benchmark::State &state) {
    run_search(state, MapAlgorithm::kSimulatedAnnealing);
}
void BM_MapPso(benchmark::State &state) {
    run_search(state, MapAlgorithm::kParticleSwarm);
}
void BM_MapTabu(benchmark::State &state) {
    run_search(state, MapAlgorithm::kTabuSearch);
}

BENCHMARK(BM_MapSa)->Arg(5)->Arg(15)->Arg(25);
BENCHMARK(BM_MapPso)->Arg(5)->Arg(15)->Arg(25);
BENCHMARK(BM_MapTabu)->Arg(5)->Arg(15)->Arg(25);

} // namespace
