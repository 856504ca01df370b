#include "snnmap/mapping.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace snnmap {

void validate_mapping(const Mapping &map, const MeshTopology &mesh)
{
    std::vector<char> occupied(mesh.num_cores(), 0);
    for (std::size_t p = 0; p < map.core_of.size(); ++p) {
        Coord c = map.core_of[p];
        if (!mesh.contains(c)) {
            throw std::invalid_argument("mapping: partition " + std::to_string(p) +
                    " placed outside the mesh at (" + std::to_string(c.x) + "," +
                    std::to_string(c.y) + ")");
        }
        int idx = mesh.core_index(c);
        if (occupied[idx]) {
            throw std::invalid_argument("mapping: core (" + std::to_string(c.x) + "," +
                    std::to_string(c.y) + ") assigned to more than one partition");
        }
        occupied[idx] = 1;
    }
}

} // namespace snnmap
