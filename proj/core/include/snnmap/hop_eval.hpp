#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>

#include "snnmap/comm_matrix.hpp"
#include "snnmap/mapping.hpp"
#include "snnmap/types.hpp"

namespace snnmap {

// Manhattan distance between two cores; the exact path length of XY
// dimension-order routing.
inline std::int64_t hop_distance(Coord s, Coord d)
{
    return std::abs(s.x - d.x) + std::abs(s.y - d.y);
}

// Total hops weighted by partition-level traffic: sum over (a, b) of
// hop_distance(core(a), core(b)) * C(a, b). The integer numerator of the
// average hop count, shared by the search loops so candidate comparisons
// stay exact.
inline std::int64_t average_hop_numerator(const CommMatrix &comm, const Mapping &map)
{
    if (map.num_partitions() < comm.k()) {
        throw std::invalid_argument("average_hop: unmapped partition");
    }
    std::int64_t total = 0;
    for (PartId a = 0; a < comm.k(); ++a) {
        Coord ca = map.core_of[a];
        for (PartId b = 0; b < comm.k(); ++b) {
            if (a == b) {
                continue; // a core to itself: zero distance
            }
            std::int64_t c = comm.at(a, b);
            if (c != 0) {
                total += hop_distance(ca, map.core_of[b]) * c;
            }
        }
    }
    return total;
}

// Average hop count H over the whole trace, intra-partition events
// included in the denominator and contributing zero hops.
inline double average_hop(const CommMatrix &comm, const Mapping &map,
        std::int64_t trace_length)
{
    if (trace_length <= 0) {
        throw std::invalid_argument("average_hop: trace length must be positive");
    }
    return static_cast<double>(average_hop_numerator(comm, map)) /
            static_cast<double>(trace_length);
}

} // namespace snnmap
