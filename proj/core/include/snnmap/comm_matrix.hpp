#pragma once

#include <cstdint>
#include <vector>

#include "snnmap/partitioning.hpp"
#include "snnmap/trace.hpp"
#include "snnmap/types.hpp"

namespace snnmap {

// Directed k x k spike-count matrix: at(a, b) counts trace events whose
// source neuron lies in partition a and destination in partition b.
// Diagonal entries count intra-partition traffic; the grand total equals
// the trace length.
class CommMatrix {
public:
    CommMatrix() = default;
    explicit CommMatrix(PartId k) : k_(k), counts_(static_cast<std::size_t>(k) * k, 0) {}

    PartId k() const { return k_; }

    std::int64_t at(PartId a, PartId b) const
    {
        return counts_[static_cast<std::size_t>(a) * k_ + b];
    }
    std::int64_t &at(PartId a, PartId b)
    {
        return counts_[static_cast<std::size_t>(a) * k_ + b];
    }

    std::int64_t total() const;
    std::int64_t off_diagonal_total() const;

    friend bool operator==(const CommMatrix &, const CommMatrix &) = default;

private:
    PartId k_ = 0;
    std::vector<std::int64_t> counts_;
};

// Tally the trace into partition-level communication counts.
// Throws std::invalid_argument when an event names a neuron without a
// partition assignment.
CommMatrix comm_matrix(const SpikeTrace &trace, const Partitioning &part);

} // namespace snnmap
