#pragma once

#include <cstdint>
#include <functional>

namespace snnmap {

using NeuronId = std::int32_t;
using PartId = std::int32_t;
using Weight = std::int64_t;

// Mesh core coordinate. x runs along the width, y along the height.
struct Coord {
    int x = 0;
    int y = 0;

    friend bool operator==(const Coord &a, const Coord &b) = default;
    friend auto operator<=>(const Coord &a, const Coord &b) = default;
};

} // namespace snnmap

template <> struct std::hash<snnmap::Coord> {
    std::size_t operator()(const snnmap::Coord &c) const noexcept
    {
        return std::hash<std::int64_t>{}(
                (static_cast<std::int64_t>(c.x) << 32) ^ static_cast<std::uint32_t>(c.y));
    }
};
