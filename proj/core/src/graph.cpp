#include "snnmap/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace snnmap {

SnnGraph::SnnGraph(NeuronId num_neurons, std::vector<GraphEdge> edges)
        : SnnGraph(num_neurons, std::vector<Weight>(num_neurons, 1), std::move(edges))
{
}

SnnGraph::SnnGraph(NeuronId num_neurons, std::vector<Weight> vertex_weights,
        std::vector<GraphEdge> edges)
        : num_neurons_(num_neurons)
        , vertex_weights_(std::move(vertex_weights))
        , edges_(std::move(edges))
{
    validate_and_index();
}

void SnnGraph::validate_and_index()
{
    if (num_neurons_ < 0) {
        throw std::invalid_argument("graph: negative neuron count");
    }
    if (static_cast<std::size_t>(num_neurons_) != vertex_weights_.size()) {
        throw std::invalid_argument("graph: vertex weight array size mismatch");
    }
    for (NeuronId v = 0; v < num_neurons_; ++v) {
        if (vertex_weights_[v] < 1) {
            throw std::invalid_argument(
                    "graph: vertex " + std::to_string(v) + " has weight < 1");
        }
        total_vertex_weight_ += vertex_weights_[v];
    }

    for (GraphEdge &e : edges_) {
        if (e.u == e.v) {
            throw std::invalid_argument(
                    "graph: self-loop on vertex " + std::to_string(e.u));
        }
        if (e.u > e.v) {
            std::swap(e.u, e.v);
        }
        if (e.u < 0 || e.v >= num_neurons_) {
            throw std::invalid_argument("graph: edge (" + std::to_string(e.u) + "," +
                    std::to_string(e.v) + ") out of range");
        }
        if (e.weight < 1) {
            throw std::invalid_argument("graph: edge (" + std::to_string(e.u) + "," +
                    std::to_string(e.v) + ") has weight < 1");
        }
    }
    std::sort(edges_.begin(), edges_.end(), [](const GraphEdge &a, const GraphEdge &b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v) {
            throw std::invalid_argument("graph: duplicate edge (" +
                    std::to_string(edges_[i].u) + "," + std::to_string(edges_[i].v) + ")");
        }
    }

    adjacency_.assign(num_neurons_, {});
    for (const GraphEdge &e : edges_) {
        adjacency_[e.u].push_back({e.v, e.weight});
        adjacency_[e.v].push_back({e.u, e.weight});
        total_edge_weight_ += e.weight;
    }
    for (auto &adj : adjacency_) {
        std::sort(adj.begin(), adj.end(),
                [](const AdjEntry &a, const AdjEntry &b) { return a.neighbor < b.neighbor; });
    }
}

Weight SnnGraph::degree_weight(NeuronId v) const
{
    Weight sum = 0;
    for (const AdjEntry &a : adjacency_[v]) {
        sum += a.weight;
    }
    return sum;
}

} // namespace snnmap
