#include "snnmap/partitioning.hpp"

#include <stdexcept>
#include <string>

namespace snnmap {

namespace {

std::vector<Weight> weights_impl(const Partitioning &part, const std::vector<Weight> *vw)
{
    std::vector<Weight> weights(part.k, 0);
    for (std::size_t v = 0; v < part.assignment.size(); ++v) {
        PartId p = part.assignment[v];
        if (p < 0 || p >= part.k) {
            throw std::invalid_argument("partitioning: vertex " + std::to_string(v) +
                    " assigned to invalid partition " + std::to_string(p));
        }
        weights[p] += vw ? (*vw)[v] : 1;
    }
    return weights;
}

void validate_impl(const Partitioning &part, const std::vector<Weight> *vw)
{
    if (part.k < 1) {
        throw std::invalid_argument("partitioning: k must be >= 1");
    }
    std::vector<Weight> weights = weights_impl(part, vw);
    for (PartId p = 0; p < part.k; ++p) {
        if (weights[p] > part.capacity) {
            throw std::invalid_argument("partitioning: partition " + std::to_string(p) +
                    " weight " + std::to_string(weights[p]) + " exceeds capacity " +
                    std::to_string(part.capacity));
        }
    }
}

} // namespace

std::vector<Weight> partition_weights(const Partitioning &part)
{
    return weights_impl(part, nullptr);
}

std::vector<Weight> partition_weights(const Partitioning &part, const SnnGraph &graph)
{
    if (part.assignment.size() != static_cast<std::size_t>(graph.num_neurons())) {
        throw std::invalid_argument("partitioning: assignment size does not match graph");
    }
    return weights_impl(part, &graph.vertex_weights());
}

void validate_partitioning(const Partitioning &part)
{
    validate_impl(part, nullptr);
}

void validate_partitioning(const Partitioning &part, const SnnGraph &graph)
{
    if (part.assignment.size() != static_cast<std::size_t>(graph.num_neurons())) {
        throw std::invalid_argument("partitioning: assignment size does not match graph");
    }
    validate_impl(part, &graph.vertex_weights());
}

Weight cut_weight(const SnnGraph &graph, const Partitioning &part)
{
    if (part.assignment.size() != static_cast<std::size_t>(graph.num_neurons())) {
        throw std::invalid_argument("cut_weight: assignment does not cover all vertices");
    }
    Weight cut = 0;
    for (const GraphEdge &e : graph.edges()) {
        if (part.assignment[e.u] != part.assignment[e.v]) {
            cut += e.weight;
        }
    }
    return cut;
}

} // namespace snnmap
