#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "snnmap/graph.hpp"
#include "snnmap/partitioning.hpp"
#include "snnmap/types.hpp"

namespace snnmap {

// One level of the coarsening hierarchy. Level 0 is the input graph and
// carries no fold data; level i > 0 was built from level i-1 by heavy-edge
// matching.
struct CoarseLevel {
    SnnGraph graph;
    // Coarse vertex -> vertices of the previous level folded into it.
    std::vector<std::vector<NeuronId>> fold_map;
    // Previous-level vertex -> its coarse vertex.
    std::vector<NeuronId> fine_to_coarse;
};

// Boundary-refinement bookkeeping for one level, exposed so tests can
// check the incrementally maintained degrees against full recomputation.
struct RefinementState {
    std::vector<PartId> assignment;
    std::vector<Weight> internal_degree;
    std::vector<std::unordered_map<PartId, Weight>> external_degree;
    std::vector<Weight> partition_weights;
    Weight cut = 0;
};

// Called after every accepted refinement move with the level graph and the
// state as maintained incrementally.
using RefineObserver = std::function<void(const SnnGraph &, const RefinementState &)>;

inline constexpr int kDefaultUndoWindow = 50;

// Heavy-edge-matching coarsening. Produces G_0..G_c; stops once a level
// has at most stop_size vertices or shrinks by less than 10%. When
// max_vertex_weight is set, folds that would exceed it are not matched
// (keeps coarse vertices placeable within a core).
std::vector<CoarseLevel> coarsen(const SnnGraph &graph, NeuronId stop_size,
        std::mt19937_64 &rng, std::optional<Weight> max_vertex_weight = std::nullopt);
std::vector<CoarseLevel> coarsen(const SnnGraph &graph, NeuronId stop_size,
        std::uint64_t seed, std::optional<Weight> max_vertex_weight = std::nullopt);

// Greedy region growing: seed each partition with a random unassigned
// vertex and grow along the heaviest frontier edge until the capacity
// bound is hit. Stranded vertices are dealt round-robin to the lightest
// partitions. Throws std::invalid_argument when infeasible.
Partitioning initial_partition(const SnnGraph &coarse, PartId k, Weight capacity,
        std::mt19937_64 &rng);
Partitioning initial_partition(const SnnGraph &coarse, PartId k, Weight capacity,
        std::uint64_t seed);

// Boundary refinement of one level, in place. Vertices whose external
// degrees sum to at least their internal degree enter a global priority
// queue keyed by gain ED[v]_b - ID[v]; moves stop after `undo_window`
// consecutive moves without a cut improvement, which are then undone.
// Returns the refined cut.
Weight refine_level(const SnnGraph &graph, std::vector<PartId> &assignment, PartId k,
        Weight capacity, int undo_window, const RefineObserver &observer = {});

// Projects `init` from the coarsest level back to level 0, running
// refine_level at every level.
Partitioning uncoarsen_refine(const std::vector<CoarseLevel> &levels,
        const Partitioning &init, Weight capacity, int undo_window,
        const RefineObserver &observer = {});

// Full multi-level pipeline: coarsen -> initial_partition ->
// uncoarsen_refine. Deterministic for a fixed seed.
Partitioning partition(const SnnGraph &graph, PartId k, Weight capacity,
        std::uint64_t seed, int undo_window = kDefaultUndoWindow);

} // namespace snnmap
