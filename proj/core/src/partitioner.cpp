#include "snnmap/partitioner.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace snnmap {

namespace {

std::uint64_t pair_key(NeuronId a, NeuronId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

} // namespace

std::vector<CoarseLevel> coarsen(const SnnGraph &graph, NeuronId stop_size,
        std::mt19937_64 &rng, std::optional<Weight> max_vertex_weight) {
    if (stop_size < 1) {
        throw std::invalid_argument("coarsen: stop_size must be >= 1");
    }
    std::vector<CoarseLevel> levels;
    levels.push_back(CoarseLevel{graph, {}, {}});

    while (true) {
        const SnnGraph &g = levels.back().graph;
        const NeuronId n = g.num_neurons();
        if (n <= stop_size) break;

        std::vector<NeuronId> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);

        // Heavy-edge matching: fold each unmatched vertex with its
        // heaviest unmatched neighbor, lowest id on ties.
        std::vector<NeuronId> coarse_of(static_cast<std::size_t>(n), -1);
        NeuronId next_id = 0;
        for (NeuronId v : order) {
            if (coarse_of[static_cast<std::size_t>(v)] != -1) continue;
            NeuronId best = -1;
            Weight best_w = 0;
            for (const AdjEntry &e : g.neighbors(v)) {
                if (coarse_of[static_cast<std::size_t>(e.neighbor)] != -1) continue;
                if (max_vertex_weight &&
                        g.vertex_weight(v) + g.vertex_weight(e.neighbor) > *max_vertex_weight) {
                    continue;
                }
                if (e.weight > best_w || (e.weight == best_w && (best == -1 || e.neighbor < best))) {
                    best_w = e.weight;
                    best = e.neighbor;
                }
            }
            const NeuronId c = next_id++;
            coarse_of[static_cast<std::size_t>(v)] = c;
            if (best != -1) coarse_of[static_cast<std::size_t>(best)] = c;
        }

        // Shrink under 10%: matching has degenerated, stop without keeping
        // the candidate level.
        if (static_cast<std::int64_t>(next_id) * 10 > static_cast<std::int64_t>(n) * 9) break;

        std::vector<Weight> coarse_vw(static_cast<std::size_t>(next_id), 0);
        for (NeuronId v = 0; v < n; ++v) {
            coarse_vw[static_cast<std::size_t>(coarse_of[static_cast<std::size_t>(v)])] +=
                    g.vertex_weight(v);
        }

        std::unordered_map<std::uint64_t, Weight> agg;
        agg.reserve(g.edges().size());
        for (const GraphEdge &e : g.edges()) {
            const NeuronId cu = coarse_of[static_cast<std::size_t>(e.u)];
            const NeuronId cv = coarse_of[static_cast<std::size_t>(e.v)];
            if (cu == cv) continue;
            agg[pair_key(cu, cv)] += e.weight;
        }
        std::vector<GraphEdge> coarse_edges;
        coarse_edges.reserve(agg.size());
        for (const auto &[key, w] : agg) {
            coarse_edges.push_back(GraphEdge{static_cast<NeuronId>(key >> 32),
                    static_cast<NeuronId>(key & 0xffffffffu), w});
        }

        std::vector<std::vector<NeuronId>> fold_map(static_cast<std::size_t>(next_id));
        for (NeuronId v = 0; v < n; ++v) {
            fold_map[static_cast<std::size_t>(coarse_of[static_cast<std::size_t>(v)])].push_back(v);
        }

        levels.push_back(CoarseLevel{
                SnnGraph(next_id, coarse_vw, coarse_edges),
                std::move(fold_map), std::move(coarse_of)});
    }
    return levels;
}

std::vector<CoarseLevel> coarsen(const SnnGraph &graph, NeuronId stop_size,
        std::uint64_t seed, std::optional<Weight> max_vertex_weight) {
    std::mt19937_64 rng(seed);
    return coarsen(graph, stop_size, rng, max_vertex_weight);
}

Partitioning initial_partition(const SnnGraph &coarse, PartId k, Weight capacity,
        std::mt19937_64 &rng) {
    if (k < 1) throw std::invalid_argument("initial_partition: k must be >= 1");
    if (capacity < 1) throw std::invalid_argument("initial_partition: capacity must be >= 1");
    if (coarse.total_vertex_weight() > static_cast<Weight>(k) * capacity) {
        throw std::invalid_argument("initial_partition: infeasible, total weight " +
                std::to_string(coarse.total_vertex_weight()) + " exceeds k*capacity " +
                std::to_string(static_cast<Weight>(k) * capacity));
    }

    const NeuronId n = coarse.num_neurons();
    std::vector<PartId> assignment(static_cast<std::size_t>(n), -1);
    std::vector<Weight> part_weight(static_cast<std::size_t>(k), 0);

    // Frontier entries ordered by edge weight desc, vertex id asc.
    struct Frontier {
        Weight w;
        NeuronId v;
        bool operator<(const Frontier &o) const {
            if (w != o.w) return w < o.w;
            return v > o.v;
        }
    };

    for (PartId p = 0; p < k; ++p) {
        std::vector<NeuronId> unassigned;
        for (NeuronId v = 0; v < n; ++v) {
            if (assignment[static_cast<std::size_t>(v)] == -1) unassigned.push_back(v);
        }
        if (unassigned.empty()) break;

        std::uniform_int_distribution<std::size_t> pick(0, unassigned.size() - 1);
        const NeuronId seed_v = unassigned[pick(rng)];
        if (coarse.vertex_weight(seed_v) > capacity) {
            throw std::invalid_argument("initial_partition: infeasible, vertex weight " +
                    std::to_string(coarse.vertex_weight(seed_v)) + " exceeds capacity " +
                    std::to_string(capacity));
        }
        assignment[static_cast<std::size_t>(seed_v)] = p;
        part_weight[static_cast<std::size_t>(p)] = coarse.vertex_weight(seed_v);

        std::priority_queue<Frontier> frontier;
        for (const AdjEntry &e : coarse.neighbors(seed_v)) {
            if (assignment[static_cast<std::size_t>(e.neighbor)] == -1) {
                frontier.push(Frontier{e.weight, e.neighbor});
            }
        }
        while (part_weight[static_cast<std::size_t>(p)] < capacity && !frontier.empty()) {
            const Frontier f = frontier.top();
            frontier.pop();
            if (assignment[static_cast<std::size_t>(f.v)] != -1) continue;
            if (part_weight[static_cast<std::size_t>(p)] + coarse.vertex_weight(f.v) > capacity) {
                continue; // does not fit here; left for a later partition
            }
            assignment[static_cast<std::size_t>(f.v)] = p;
            part_weight[static_cast<std::size_t>(p)] += coarse.vertex_weight(f.v);
            for (const AdjEntry &e : coarse.neighbors(f.v)) {
                if (assignment[static_cast<std::size_t>(e.neighbor)] == -1) {
                    frontier.push(Frontier{e.weight, e.neighbor});
                }
            }
        }
    }

    // Leftovers (exhausted frontiers, skipped-over vertices) go to the
    // lightest partition that still fits them.
    for (NeuronId v = 0; v < n; ++v) {
        if (assignment[static_cast<std::size_t>(v)] != -1) continue;
        PartId best = -1;
        for (PartId p = 0; p < k; ++p) {
            if (part_weight[static_cast<std::size_t>(p)] + coarse.vertex_weight(v) > capacity) continue;
            if (best == -1 ||
                    part_weight[static_cast<std::size_t>(p)] < part_weight[static_cast<std::size_t>(best)]) {
                best = p;
            }
        }
        if (best == -1) {
            throw std::invalid_argument(
                    "initial_partition: infeasible, vertex " + std::to_string(v) +
                    " does not fit any partition");
        }
        assignment[static_cast<std::size_t>(v)] = best;
        part_weight[static_cast<std::size_t>(best)] += coarse.vertex_weight(v);
    }

    Partitioning part{std::move(assignment), k, capacity};
    validate_partitioning(part, coarse);
    return part;
}

Partitioning initial_partition(const SnnGraph &coarse, PartId k, Weight capacity,
        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return initial_partition(coarse, k, capacity, rng);
}

Weight refine_level(const SnnGraph &g, std::vector<PartId> &assignment, PartId k,
        Weight capacity, int undo_window, const RefineObserver &observer) {
    if (undo_window < 1) throw std::invalid_argument("refine_level: undo_window must be >= 1");
    const NeuronId n = g.num_neurons();
    if (assignment.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("refine_level: assignment size mismatch");
    }

    std::vector<Weight> part_weight(static_cast<std::size_t>(k), 0);
    std::vector<Weight> internal(static_cast<std::size_t>(n), 0);
    std::vector<std::unordered_map<PartId, Weight>> external(static_cast<std::size_t>(n));
    std::vector<Weight> external_sum(static_cast<std::size_t>(n), 0);
    Weight cut = 0;

    for (NeuronId v = 0; v < n; ++v) {
        part_weight[static_cast<std::size_t>(assignment[static_cast<std::size_t>(v)])] +=
                g.vertex_weight(v);
    }
    for (NeuronId v = 0; v < n; ++v) {
        const PartId pv = assignment[static_cast<std::size_t>(v)];
        for (const AdjEntry &e : g.neighbors(v)) {
            const PartId pu = assignment[static_cast<std::size_t>(e.neighbor)];
            if (pu == pv) {
                internal[static_cast<std::size_t>(v)] += e.weight;
            } else {
                external[static_cast<std::size_t>(v)][pu] += e.weight;
                external_sum[static_cast<std::size_t>(v)] += e.weight;
                if (v < e.neighbor) cut += e.weight;
            }
        }
    }

    // Gain-ordered queue with lazy invalidation: entries carry the version
    // of the vertex at push time and are dropped when stale.
    struct Entry {
        Weight gain;
        NeuronId v;
        std::uint64_t version;
        bool operator<(const Entry &o) const {
            if (gain != o.gain) return gain < o.gain;
            return v > o.v;
        }
    };
    std::vector<std::uint64_t> version(static_cast<std::size_t>(n), 0);
    std::priority_queue<Entry> pq;

    // Best target: the boundary partition with the largest external degree,
    // lowest id on ties.
    auto best_target = [&](NeuronId v) -> std::pair<PartId, Weight> {
        PartId best = -1;
        Weight best_w = -1;
        for (const auto &[p, w] : external[static_cast<std::size_t>(v)]) {
            if (w > best_w || (w == best_w && p < best)) {
                best = p;
                best_w = w;
            }
        }
        return {best, best_w};
    };
    auto push_if_eligible = [&](NeuronId v) {
        const std::size_t sv = static_cast<std::size_t>(v);
        if (external[sv].empty() || external_sum[sv] < internal[sv]) return;
        const auto [b, w] = best_target(v);
        (void)b;
        pq.push(Entry{w - internal[sv], v, version[sv]});
    };
    for (NeuronId v = 0; v < n; ++v) push_if_eligible(v);

    struct MoveRec {
        NeuronId v;
        PartId from;
        PartId to;
    };
    std::vector<MoveRec> move_log;
    Weight best_cut = cut;
    std::size_t best_len = 0;
    int since_improve = 0;

    while (!pq.empty() && since_improve < undo_window) {
        const Entry e = pq.top();
        pq.pop();
        const std::size_t sv = static_cast<std::size_t>(e.v);
        if (e.version != version[sv]) continue;

        const auto [b, ext_b] = best_target(e.v);
        assert(b >= 0);
        if (part_weight[static_cast<std::size_t>(b)] + g.vertex_weight(e.v) > capacity) {
            continue; // over capacity; the entry is consumed, a neighbor update re-adds it
        }

        const PartId from = assignment[sv];
        const Weight gain = ext_b - internal[sv];
        cut -= gain;
        assignment[sv] = b;
        part_weight[static_cast<std::size_t>(from)] -= g.vertex_weight(e.v);
        part_weight[static_cast<std::size_t>(b)] += g.vertex_weight(e.v);

        // v itself: its old external degree toward b becomes internal, its
        // old internal degree becomes external toward `from`.
        const Weight old_internal = internal[sv];
        internal[sv] = ext_b;
        external[sv].erase(b);
        external_sum[sv] -= ext_b;
        if (old_internal > 0) {
            external[sv][from] += old_internal;
            external_sum[sv] += old_internal;
        }
        ++version[sv];
        push_if_eligible(e.v);

        for (const AdjEntry &adj : g.neighbors(e.v)) {
            const std::size_t su = static_cast<std::size_t>(adj.neighbor);
            const PartId pu = assignment[su];
            if (pu == from) {
                internal[su] -= adj.weight;
                external[su][b] += adj.weight;
                external_sum[su] += adj.weight;
            } else if (pu == b) {
                internal[su] += adj.weight;
                auto it = external[su].find(from);
                it->second -= adj.weight;
                if (it->second == 0) external[su].erase(it);
                external_sum[su] -= adj.weight;
            } else {
                auto it = external[su].find(from);
                it->second -= adj.weight;
                if (it->second == 0) external[su].erase(it);
                external[su][b] += adj.weight;
            }
            ++version[su];
            push_if_eligible(adj.neighbor);
        }

        move_log.push_back(MoveRec{e.v, from, b});
        if (cut < best_cut) {
            best_cut = cut;
            best_len = move_log.size();
            since_improve = 0;
        } else {
            ++since_improve;
        }

        if (observer) {
            RefinementState state;
            state.assignment = assignment;
            state.internal_degree = internal;
            state.external_degree = external;
            state.partition_weights = part_weight;
            state.cut = cut;
            observer(g, state);
        }
    }

    // Undo the trailing non-improving moves.
    for (std::size_t i = move_log.size(); i > best_len; --i) {
        const MoveRec &m = move_log[i - 1];
        assignment[static_cast<std::size_t>(m.v)] = m.from;
    }
    return best_cut;
}

Partitioning uncoarsen_refine(const std::vector<CoarseLevel> &levels,
        const Partitioning &init, Weight capacity, int undo_window,
        const RefineObserver &observer) {
    if (levels.empty()) throw std::invalid_argument("uncoarsen_refine: no levels");
    if (undo_window < 1) throw std::invalid_argument("uncoarsen_refine: undo_window must be >= 1");
    validate_partitioning(init, levels.back().graph);

    std::vector<PartId> assignment = init.assignment;
    for (std::size_t li = levels.size(); li-- > 0;) {
        refine_level(levels[li].graph, assignment, init.k, capacity, undo_window, observer);
        if (li > 0) {
            // Project onto the next finer level.
            const std::vector<NeuronId> &f2c = levels[li].fine_to_coarse;
            std::vector<PartId> finer(f2c.size());
            for (std::size_t v = 0; v < f2c.size(); ++v) {
                finer[v] = assignment[static_cast<std::size_t>(f2c[v])];
            }
            assignment = std::move(finer);
        }
    }

    Partitioning out{std::move(assignment), init.k, capacity};
    validate_partitioning(out, levels.front().graph);
    return out;
}

Partitioning partition(const SnnGraph &graph, PartId k, Weight capacity,
        std::uint64_t seed, int undo_window) {
    if (k < 1) throw std::invalid_argument("partition: k must be >= 1");
    if (capacity < 1) throw std::invalid_argument("partition: capacity must be >= 1");
    if (graph.total_vertex_weight() > static_cast<Weight>(k) * capacity) {
        throw std::invalid_argument("partition: infeasible, total vertex weight " +
                std::to_string(graph.total_vertex_weight()) + " exceeds k*capacity " +
                std::to_string(static_cast<Weight>(k) * capacity));
    }

    std::mt19937_64 rng(seed);
    const NeuronId stop_size = std::max<NeuronId>(30 * k, k);
    std::vector<CoarseLevel> levels = coarsen(graph, stop_size, rng, capacity);

    // Greedy packing can strand heavy coarse vertices on tight instances;
    // retrying on a finer level shrinks the pieces until packing succeeds.
    while (true) {
        try {
            Partitioning init = initial_partition(levels.back().graph, k, capacity, rng);
            return uncoarsen_refine(levels, init, capacity, undo_window);
        } catch (const std::invalid_argument &) {
            if (levels.size() == 1) throw;
            levels.pop_back();
        }
    }
}

} // namespace snnmap
