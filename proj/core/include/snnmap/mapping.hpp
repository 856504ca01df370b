#pragma once

#include <vector>

#include "snnmap/mesh.hpp"
#include "snnmap/types.hpp"

namespace snnmap {

// Placement of partitions on mesh cores. Injective: no two partitions
// share a core.
struct Mapping {
    std::vector<Coord> core_of;

    PartId num_partitions() const { return static_cast<PartId>(core_of.size()); }

    friend bool operator==(const Mapping &, const Mapping &) = default;
};

// Throws std::invalid_argument on out-of-bounds coordinates or two
// partitions sharing a core.
void validate_mapping(const Mapping &map, const MeshTopology &mesh);

} // namespace snnmap
