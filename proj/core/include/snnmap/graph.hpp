#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "snnmap/types.hpp"

namespace snnmap {

// Undirected weighted edge; stored with u < v.
struct GraphEdge {
    NeuronId u = 0;
    NeuronId v = 0;
    Weight weight = 1; // spikes communicated on this synapse pair

    friend bool operator==(const GraphEdge &, const GraphEdge &) = default;
};

struct AdjEntry {
    NeuronId neighbor = 0;
    Weight weight = 0;
};

// Undirected SNN graph: vertices are neurons (weight = neuron count folded
// into the vertex, 1 for raw networks), edges carry aggregate spike counts.
// No self-loops, no duplicate edges, all weights >= 1. Immutable after
// construction.
class SnnGraph {
public:
    SnnGraph() = default;
    // Unit vertex weights.
    SnnGraph(NeuronId num_neurons, std::vector<GraphEdge> edges);
    SnnGraph(NeuronId num_neurons, std::vector<Weight> vertex_weights,
            std::vector<GraphEdge> edges);

    NeuronId num_neurons() const { return num_neurons_; }
    std::size_t num_edges() const { return edges_.size(); }

    Weight vertex_weight(NeuronId v) const { return vertex_weights_[v]; }
    const std::vector<Weight> &vertex_weights() const { return vertex_weights_; }
    Weight total_vertex_weight() const { return total_vertex_weight_; }

    // Sorted by (u, v).
    const std::vector<GraphEdge> &edges() const { return edges_; }
    Weight total_edge_weight() const { return total_edge_weight_; }

    std::span<const AdjEntry> neighbors(NeuronId v) const
    {
        return {adjacency_[v].data(), adjacency_[v].size()};
    }

    Weight degree_weight(NeuronId v) const;

    friend bool operator==(const SnnGraph &a, const SnnGraph &b)
    {
        return a.num_neurons_ == b.num_neurons_ &&
                a.vertex_weights_ == b.vertex_weights_ && a.edges_ == b.edges_;
    }

private:
    void validate_and_index();

    NeuronId num_neurons_ = 0;
    std::vector<Weight> vertex_weights_;
    std::vector<GraphEdge> edges_;
    std::vector<std::vector<AdjEntry>> adjacency_;
    Weight total_edge_weight_ = 0;
    Weight total_vertex_weight_ = 0;
};

} // namespace snnmap
