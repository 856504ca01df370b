#include "snnmap/noc_sim.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace snnmap {

namespace {

// Direction encoding shared by EdgeIndex and the router.
constexpr int kEast = 0, kWest = 1, kNorth = 2, kSouth = 3;
constexpr int kDx[4] = {1, -1, 0, 0};
constexpr int kDy[4] = {0, 0, 1, -1};

int step_dir(Coord from, Coord to) {
    if (to.x == from.x + 1 && to.y == from.y) return kEast;
    if (to.x == from.x - 1 && to.y == from.y) return kWest;
    if (to.x == from.x && to.y == from.y + 1) return kNorth;
    if (to.x == from.x && to.y == from.y - 1) return kSouth;
    return -1;
}

} // namespace

EdgeIndex::EdgeIndex(const MeshTopology &mesh) : mesh_(mesh) {
    mesh_.validate();
    id_.assign(static_cast<std::size_t>(mesh_.num_cores()) * 4, -1);
    for (int c = 0; c < mesh_.num_cores(); ++c) {
        const Coord from = mesh_.coord_of(c);
        for (int d = 0; d < 4; ++d) {
            const Coord to{from.x + kDx[d], from.y + kDy[d]};
            if (!mesh_.contains(to)) continue;
            id_[static_cast<std::size_t>(c) * 4 + static_cast<std::size_t>(d)] =
                    static_cast<int>(edges_.size());
            edges_.push_back(DirectedEdge{from, to});
        }
    }
}

int EdgeIndex::between(Coord from, Coord to) const {
    const int d = step_dir(from, to);
    const int id = d < 0 ? -1
                         : id_[static_cast<std::size_t>(mesh_.core_index(from)) * 4 +
                                   static_cast<std::size_t>(d)];
    if (id < 0) throw std::invalid_argument("EdgeIndex: cores are not adjacent");
    return id;
}

std::vector<DirectedEdge> route_xy(Coord src, Coord dst) {
    std::vector<DirectedEdge> route;
    Coord cur = src;
    while (cur.x != dst.x) {
        const Coord next{cur.x + (dst.x > cur.x ? 1 : -1), cur.y};
        route.push_back(DirectedEdge{cur, next});
        cur = next;
    }
    while (cur.y != dst.y) {
        const Coord next{cur.x, cur.y + (dst.y > cur.y ? 1 : -1)};
        route.push_back(DirectedEdge{cur, next});
        cur = next;
    }
    return route;
}

namespace {

void validate_sim_inputs(const SpikeTrace &trace, const Partitioning &part,
        const Mapping &mapping, const MeshTopology &mesh, const SimConfig &cfg) {
    mesh.validate();
    validate_mapping(mapping, mesh);
    if (static_cast<PartId>(mapping.num_partitions()) != part.k) {
        throw std::invalid_argument("simulate: mapping covers " +
                std::to_string(mapping.num_partitions()) + " partitions, partitioning has " +
                std::to_string(part.k));
    }
    if (cfg.edge_capacity < 1) throw std::invalid_argument("simulate: edge_capacity must be >= 1");
    if (cfg.injection_capacity < 1) {
        throw std::invalid_argument("simulate: injection_capacity must be >= 1");
    }
    if (cfg.hop_latency < 1) throw std::invalid_argument("simulate: hop_latency must be >= 1");
    if (cfg.cycles_per_timestep < 1) {
        throw std::invalid_argument("simulate: cycles_per_timestep must be >= 1");
    }
    if (cfg.e_link < 0.0 || cfg.e_router < 0.0) {
        throw std::invalid_argument("simulate: energy coefficients must be >= 0");
    }
    const NeuronId n = static_cast<NeuronId>(part.assignment.size());
    for (const SpikeEvent &ev : trace.events) {
        if (ev.src < 0 || ev.src >= n || ev.dst < 0 || ev.dst >= n) {
            throw std::invalid_argument("simulate: trace references neuron outside the partitioning");
        }
    }
}

struct Flit {
    const std::vector<int> *route = nullptr; // dense edge ids
    int hop = 0;
    std::int64_t inject = 0;
    std::int64_t event_idx = 0;
    int src_core = 0;
    int dst_core = 0;
    bool counted = false; // congestion already charged at the current link
};

} // namespace

SimResult simulate(const SpikeTrace &trace, const Partitioning &part,
        const Mapping &mapping, const MeshTopology &mesh, const SimConfig &cfg) {
    validate_sim_inputs(trace, part, mapping, mesh, cfg);

    const EdgeIndex eidx(mesh);
    const int num_cores = mesh.num_cores();

    // Core of each partition, then routes cached per (src, dst) core pair.
    std::vector<int> core_of_part(static_cast<std::size_t>(part.k));
    for (PartId p = 0; p < part.k; ++p) {
        core_of_part[static_cast<std::size_t>(p)] =
                mesh.core_index(mapping.core_of[static_cast<std::size_t>(p)]);
    }
    std::unordered_map<std::int64_t, std::vector<int>> route_cache;
    auto route_ids = [&](int s, int d) -> const std::vector<int> * {
        const std::int64_t key = static_cast<std::int64_t>(s) * num_cores + d;
        auto it = route_cache.find(key);
        if (it == route_cache.end()) {
            std::vector<int> ids;
            for (const DirectedEdge &e : route_xy(mesh.coord_of(s), mesh.coord_of(d))) {
                ids.push_back(eidx.between(e.from, e.to));
            }
            it = route_cache.emplace(key, std::move(ids)).first;
        }
        return &it->second;
    };

    SimResult res;
    res.total_events = static_cast<std::int64_t>(trace.events.size());
    res.edge_hops.assign(static_cast<std::size_t>(eidx.count()), 0);

    std::vector<Flit> flits;
    flits.reserve(trace.events.size());
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        const SpikeEvent &ev = trace.events[i];
        const int sc = core_of_part[static_cast<std::size_t>(
                part.assignment[static_cast<std::size_t>(ev.src)])];
        const int dc = core_of_part[static_cast<std::size_t>(
                part.assignment[static_cast<std::size_t>(ev.dst)])];
        if (sc == dc) {
            ++res.intra_core_events;
            continue;
        }
        Flit f;
        f.route = route_ids(sc, dc);
        f.inject = ev.timestep * cfg.cycles_per_timestep;
        f.event_idx = static_cast<std::int64_t>(i);
        f.src_core = sc;
        f.dst_core = dc;
        flits.push_back(f);
    }
    res.metrics.spikes_injected = static_cast<std::int64_t>(flits.size());

    std::vector<std::deque<int>> edge_q(static_cast<std::size_t>(eidx.count()));
    std::vector<std::deque<int>> ni_q(static_cast<std::size_t>(num_cores));
    std::map<std::int64_t, std::vector<std::pair<int, int>>> arrivals; // cycle -> (edge, flit)
    std::set<int> active_edges;

    std::int64_t cycle = 0;
    std::int64_t ni_backlog = 0;
    std::int64_t queued = 0;
    std::int64_t delivered = 0;
    std::int64_t latency_sum = 0;
    std::int64_t congestion = 0;
    std::size_t next_inject = 0;

    std::vector<std::pair<int, int>> entering;
    while (next_inject < flits.size() || ni_backlog > 0 || queued > 0 || !arrivals.empty()) {
        if (ni_backlog == 0 && queued == 0) {
            // Nothing in flight: jump to the next injection or arrival.
            std::int64_t jump = std::numeric_limits<std::int64_t>::max();
            if (next_inject < flits.size()) jump = flits[next_inject].inject;
            if (!arrivals.empty()) jump = std::min(jump, arrivals.begin()->first);
            cycle = std::max(cycle, jump);
        }

        while (next_inject < flits.size() && flits[next_inject].inject == cycle) {
            ni_q[static_cast<std::size_t>(flits[next_inject].src_core)].push_back(
                    static_cast<int>(next_inject));
            ++ni_backlog;
            ++next_inject;
        }

        entering.clear();
        if (auto it = arrivals.find(cycle); it != arrivals.end()) {
            entering = std::move(it->second);
            arrivals.erase(it);
        }
        if (ni_backlog > 0) {
            for (int c = 0; c < num_cores && ni_backlog > 0; ++c) {
                auto &q = ni_q[static_cast<std::size_t>(c)];
                std::int64_t take = std::min<std::int64_t>(
                        cfg.injection_capacity, static_cast<std::int64_t>(q.size()));
                while (take-- > 0) {
                    const int f = q.front();
                    q.pop_front();
                    --ni_backlog;
                    entering.emplace_back((*flits[static_cast<std::size_t>(f)].route)[0], f);
                }
            }
        }
        // Simultaneous arrivals at a link queue up by injection time, then
        // event index.
        std::sort(entering.begin(), entering.end(), [&](const auto &a, const auto &b) {
            if (a.first != b.first) return a.first < b.first;
            const Flit &fa = flits[static_cast<std::size_t>(a.second)];
            const Flit &fb = flits[static_cast<std::size_t>(b.second)];
            if (fa.inject != fb.inject) return fa.inject < fb.inject;
            return fa.event_idx < fb.event_idx;
        });
        for (const auto &[e, f] : entering) {
            edge_q[static_cast<std::size_t>(e)].push_back(f);
            ++queued;
            active_edges.insert(e);
        }

        for (auto it = active_edges.begin(); it != active_edges.end();) {
            const int e = *it;
            auto &q = edge_q[static_cast<std::size_t>(e)];
            std::int64_t fwd = std::min<std::int64_t>(
                    cfg.edge_capacity, static_cast<std::int64_t>(q.size()));
            res.edge_hops[static_cast<std::size_t>(e)] += fwd;
            while (fwd-- > 0) {
                const int fi = q.front();
                q.pop_front();
                --queued;
                Flit &f = flits[static_cast<std::size_t>(fi)];
                ++f.hop;
                f.counted = false;
                if (static_cast<std::size_t>(f.hop) == f.route->size()) {
                    ++delivered;
                    const std::int64_t t_deliver = cycle + cfg.hop_latency;
                    latency_sum += t_deliver - f.inject;
                    if (cfg.record_flits) {
                        res.flits.push_back(FlitRecord{f.inject, mesh.coord_of(f.src_core),
                                mesh.coord_of(f.dst_core), t_deliver});
                    }
                } else {
                    arrivals[cycle + cfg.hop_latency].emplace_back((*f.route)[f.hop], fi);
                }
            }
            if (cfg.congestion_recount) {
                congestion += static_cast<std::int64_t>(q.size());
            } else {
                for (const int fi : q) {
                    Flit &f = flits[static_cast<std::size_t>(fi)];
                    if (!f.counted) {
                        f.counted = true;
                        ++congestion;
                    }
                }
            }
            if (q.empty()) {
                it = active_edges.erase(it);
            } else {
                ++it;
            }
        }
        ++cycle;
    }

    assert(delivered == res.metrics.spikes_injected);
    res.cycles = cycle;
    for (const std::int64_t h : res.edge_hops) res.total_hops += h;

    MetricsReport &m = res.metrics;
    m.spikes_delivered = delivered;
    m.average_hop = res.total_events > 0
            ? static_cast<double>(res.total_hops) / static_cast<double>(res.total_events)
            : 0.0;
    m.average_latency = delivered > 0
            ? static_cast<double>(latency_sum) / static_cast<double>(delivered)
            : 0.0;
    m.dynamic_energy = static_cast<double>(res.total_hops) * (cfg.e_link + cfg.e_router);
    m.congestion_count = congestion;
    if (!res.edge_hops.empty()) {
        double mean = 0.0;
        for (const std::int64_t h : res.edge_hops) mean += static_cast<double>(h);
        mean /= static_cast<double>(res.edge_hops.size());
        double var = 0.0;
        for (const std::int64_t h : res.edge_hops) {
            const double d = static_cast<double>(h) - mean;
            var += d * d;
        }
        m.edge_variance = var / static_cast<double>(res.edge_hops.size());
    }
    return res;
}

std::vector<EdgeHistogramEntry> make_edge_histogram(const MeshTopology &mesh,
        const std::vector<std::int64_t> &edge_hops) {
    const EdgeIndex eidx(mesh);
    if (edge_hops.size() != static_cast<std::size_t>(eidx.count())) {
        throw std::invalid_argument("make_edge_histogram: size mismatch with mesh edge count");
    }
    std::vector<EdgeHistogramEntry> out;
    out.reserve(edge_hops.size());
    for (int e = 0; e < eidx.count(); ++e) {
        out.push_back(EdgeHistogramEntry{
                eidx.edge(e).from, eidx.edge(e).to, edge_hops[static_cast<std::size_t>(e)]});
    }
    return out;
}

} // namespace snnmap
