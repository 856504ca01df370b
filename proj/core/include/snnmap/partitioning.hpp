#pragma once

#include <cstdint>
#include <vector>

#include "snnmap/graph.hpp"
#include "snnmap/types.hpp"

namespace snnmap {

// Assignment of every vertex to one of k partitions. `capacity` bounds the
// total vertex weight per partition (neurons per core). Partitions may be
// empty when k exceeds need.
struct Partitioning {
    std::vector<PartId> assignment;
    PartId k = 0;
    Weight capacity = 0;

    std::size_t size() const { return assignment.size(); }

    friend bool operator==(const Partitioning &, const Partitioning &) = default;
};

// Per-partition total vertex weight, unit weights (one neuron per vertex).
std::vector<Weight> partition_weights(const Partitioning &part);
// Per-partition total vertex weight under the graph's vertex weights.
std::vector<Weight> partition_weights(const Partitioning &part, const SnnGraph &graph);

// Throws std::invalid_argument if any id is outside [0, k) or any
// partition's weight exceeds the capacity.
void validate_partitioning(const Partitioning &part);
void validate_partitioning(const Partitioning &part, const SnnGraph &graph);

// Total weight of edges whose endpoints lie in different partitions.
Weight cut_weight(const SnnGraph &graph, const Partitioning &part);

} // namespace snnmap
