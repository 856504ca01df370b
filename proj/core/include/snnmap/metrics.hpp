#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "snnmap/types.hpp"

namespace snnmap {

// Evaluation metrics for one deployment (partitioning + mapping) after a
// full trace-driven mesh simulation.
struct MetricsReport {
    double average_hop = 0.0;     // total hops / trace length
    double average_latency = 0.0; // cycles, mean over delivered inter-core flits
    double dynamic_energy = 0.0;  // energy units
    std::int64_t congestion_count = 0;
    double edge_variance = 0.0;   // population variance of per-edge hop totals
    std::int64_t spikes_injected = 0;
    std::int64_t spikes_delivered = 0;

    friend bool operator==(const MetricsReport &, const MetricsReport &) = default;
};

// Cumulative traversals of one directed mesh edge.
struct EdgeHistogramEntry {
    Coord from;
    Coord to;
    std::int64_t hops = 0;

    friend bool operator==(const EdgeHistogramEntry &, const EdgeHistogramEntry &) = default;
};

// Reproduction header embedded in every emitted JSON artifact: the stage
// that produced it, a hash of the effective configuration, and the flat
// parameter map (seeds, input hashes, workload identity).
struct Provenance {
    std::string stage;
    std::string config_hash;
    std::map<std::string, std::string> params;

    friend bool operator==(const Provenance &, const Provenance &) = default;
};

} // namespace snnmap
