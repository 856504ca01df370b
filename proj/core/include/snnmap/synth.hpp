#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snnmap/graph.hpp"
#include "snnmap/trace.hpp"

namespace snnmap {

// Layer-to-layer connectivity: all-to-all, or each synapse kept w.p. p.
struct ConnectivitySpec {
    bool full = true;
    double p = 1.0;

    static ConnectivitySpec full_spec() { return {true, 1.0}; }
    static ConnectivitySpec random_spec(double p) { return {false, p}; }
    // Accepts "full" or "random:<p>".
    static ConnectivitySpec parse(const std::string &text);
    std::string to_string() const;
};

struct SynthResult {
    SnnGraph graph;
    SpikeTrace trace;
};

// Feedforward net with the given layer sizes, neurons numbered layer by
// layer. Every neuron outside the final layer fires w.p. `rate` each
// timestep, emitting one event per outgoing synapse. Graph edge weights
// are the aggregated per-synapse event counts; silent synapses are
// dropped.
SynthResult gen_feedforward(const std::vector<int> &layers, ConnectivitySpec connect,
        double rate, int timesteps, std::uint64_t seed);

// Erdos-Renyi graph on n neurons (each unordered pair connected w.p. p);
// any neuron may fire, sending one event to each neighbor.
SynthResult gen_random(int n, double p, double rate, int timesteps, std::uint64_t seed);

} // namespace snnmap
