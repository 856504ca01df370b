#include "snnmap/comm_matrix.hpp"

#include <stdexcept>
#include <string>

namespace snnmap {

std::int64_t CommMatrix::total() const
{
    std::int64_t sum = 0;
    for (std::int64_t c : counts_) {
        sum += c;
    }
    return sum;
}

std::int64_t CommMatrix::off_diagonal_total() const
{
    std::int64_t sum = 0;
    for (PartId a = 0; a < k_; ++a) {
        for (PartId b = 0; b < k_; ++b) {
            if (a != b) {
                sum += at(a, b);
            }
        }
    }
    return sum;
}

CommMatrix comm_matrix(const SpikeTrace &trace, const Partitioning &part)
{
    CommMatrix matrix(part.k);
    const auto n = static_cast<NeuronId>(part.assignment.size());
    for (const SpikeEvent &e : trace.events) {
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
            throw std::invalid_argument("comm_matrix: neuron " +
                    std::to_string(e.src >= n || e.src < 0 ? e.src : e.dst) +
                    " has no partition assignment");
        }
        ++matrix.at(part.assignment[e.src], part.assignment[e.dst]);
    }
    return matrix;
}

} // namespace snnmap
