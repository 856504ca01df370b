#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "snnmap/mapping.hpp"
#include "snnmap/mesh.hpp"
#include "snnmap/metrics.hpp"
#include "snnmap/partitioning.hpp"
#include "snnmap/trace.hpp"
#include "snnmap/types.hpp"

namespace snnmap {

inline constexpr std::int64_t kUnlimitedCapacity = std::numeric_limits<std::int64_t>::max();

struct DirectedEdge {
    Coord from;
    Coord to;
    bool operator==(const DirectedEdge &) const = default;
};

// Dense ids for the valid directed mesh links, ordered by source core
// index, then direction E, W, N, S.
class EdgeIndex {
public:
    explicit EdgeIndex(const MeshTopology &mesh);

    int count() const { return static_cast<int>(edges_.size()); }
    const std::vector<DirectedEdge> &edges() const { return edges_; }
    const DirectedEdge &edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
    // Id of the link between two adjacent cores; throws if not adjacent.
    int between(Coord from, Coord to) const;

private:
    MeshTopology mesh_;
    std::vector<int> id_; // core * 4 + direction -> dense id or -1
    std::vector<DirectedEdge> edges_;
};

// Dimension-ordered route: X first, then Y. Empty when src == dst.
std::vector<DirectedEdge> route_xy(Coord src, Coord dst);

struct SimConfig {
    std::int64_t edge_capacity = 256;      // flits a link forwards per cycle
    std::int64_t injection_capacity = 256; // flits a core injects per cycle
    int hop_latency = 1;                   // cycles per link traversal
    int cycles_per_timestep = 1;
    bool congestion_recount = true; // false: each deferral counted once per flit per link
    double e_link = 1.0;
    double e_router = 1.0;
    bool record_flits = false;
};

struct FlitRecord {
    std::int64_t inject_time = 0;
    Coord src_core;
    Coord dst_core;
    std::int64_t deliver_time = 0;
};

struct SimResult {
    MetricsReport metrics;
    std::vector<std::int64_t> edge_hops; // per EdgeIndex id, total flits carried
    std::vector<FlitRecord> flits;       // populated when record_flits
    std::int64_t total_events = 0;
    std::int64_t intra_core_events = 0;
    std::int64_t total_hops = 0;
    std::int64_t cycles = 0;
};

SimResult simulate(const SpikeTrace &trace, const Partitioning &part,
        const Mapping &mapping, const MeshTopology &mesh, const SimConfig &config = {});

std::vector<EdgeHistogramEntry> make_edge_histogram(const MeshTopology &mesh,
        const std::vector<std::int64_t> &edge_hops);

} // namespace snnmap
