#pragma once

#include <cstdint>
#include <stdexcept>

#include "snnmap/types.hpp"

namespace snnmap {

// 2D-mesh NoC geometry plus the two hardware capacities: neurons per
// crossbar and spikes per directed link per cycle.
struct MeshTopology {
    int width = 5;
    int height = 5;
    Weight core_capacity = 256;      // neurons per core
    std::int64_t edge_capacity = 256; // spikes per directed edge per cycle

    int num_cores() const { return width * height; }

    bool contains(Coord c) const
    {
        return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
    }

    int core_index(Coord c) const { return c.y * width + c.x; }
    Coord coord_of(int index) const { return {index % width, index / width}; }

    void validate() const
    {
        if (width < 1 || height < 1) {
            throw std::invalid_argument("mesh: width and height must be >= 1");
        }
        if (core_capacity < 1) {
            throw std::invalid_argument("mesh: core capacity must be >= 1");
        }
        if (edge_capacity < 1) {
            throw std::invalid_argument("mesh: edge capacity must be >= 1");
        }
    }

    friend bool operator==(const MeshTopology &, const MeshTopology &) = default;
};

} // namespace snnmap
