#include "snnmap/mapper.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "snnmap/hop_eval.hpp"

namespace snnmap {

MapAlgorithm parse_algorithm(const std::string &name) {
    if (name == "sa") return MapAlgorithm::kSimulatedAnnealing;
    if (name == "pso") return MapAlgorithm::kParticleSwarm;
    if (name == "tabu") return MapAlgorithm::kTabuSearch;
    throw std::invalid_argument("unknown algorithm '" + name + "' (expected sa, pso, or tabu)");
}

std::string algorithm_name(MapAlgorithm alg) {
    switch (alg) {
        case MapAlgorithm::kSimulatedAnnealing: return "sa";
        case MapAlgorithm::kParticleSwarm: return "pso";
        case MapAlgorithm::kTabuSearch: return "tabu";
    }
    return "?";
}

Mapping random_mapping(PartId k, const MeshTopology &mesh, std::mt19937_64 &rng) {
    mesh.validate();
    if (k < 0 || k > static_cast<PartId>(mesh.num_cores())) {
        throw std::invalid_argument("random_mapping: k exceeds core count");
    }
    std::vector<int> cores(static_cast<std::size_t>(mesh.num_cores()));
    std::iota(cores.begin(), cores.end(), 0);
    std::shuffle(cores.begin(), cores.end(), rng);
    Mapping m;
    m.core_of.reserve(static_cast<std::size_t>(k));
    for (PartId p = 0; p < k; ++p) {
        m.core_of.push_back(mesh.coord_of(cores[static_cast<std::size_t>(p)]));
    }
    return m;
}

Mapping random_mapping(PartId k, const MeshTopology &mesh, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_mapping(k, mesh, rng);
}

namespace {

// Symmetrized traffic with O(k) move deltas.
class HopObjective {
public:
    HopObjective(const CommMatrix &comm, const MeshTopology &mesh)
            : k_(comm.k()), mesh_(mesh),
              sym_(static_cast<std::size_t>(k_) * static_cast<std::size_t>(k_), 0) {
        for (PartId a = 0; a < k_; ++a) {
            for (PartId b = 0; b < k_; ++b) {
                if (a == b) continue;
                sym(a, b) = comm.at(a, b) + comm.at(b, a);
            }
        }
    }

    PartId k() const { return k_; }

    std::int64_t full(const Mapping &m) const {
        std::int64_t total = 0;
        for (PartId a = 0; a < k_; ++a) {
            for (PartId b = a + 1; b < k_; ++b) {
                total += sym(a, b) * hop_distance(m.core_of[static_cast<std::size_t>(a)],
                                             m.core_of[static_cast<std::size_t>(b)]);
            }
        }
        return total;
    }

    std::int64_t delta_relocate(const Mapping &m, PartId p, Coord to) const {
        const Coord from = m.core_of[static_cast<std::size_t>(p)];
        std::int64_t d = 0;
        for (PartId r = 0; r < k_; ++r) {
            if (r == p) continue;
            const Coord cr = m.core_of[static_cast<std::size_t>(r)];
            d += sym(p, r) * (hop_distance(to, cr) - hop_distance(from, cr));
        }
        return d;
    }

    std::int64_t delta_swap(const Mapping &m, PartId p, PartId q) const {
        const Coord cp = m.core_of[static_cast<std::size_t>(p)];
        const Coord cq = m.core_of[static_cast<std::size_t>(q)];
        std::int64_t d = 0;
        for (PartId r = 0; r < k_; ++r) {
            if (r == p || r == q) continue;
            const Coord cr = m.core_of[static_cast<std::size_t>(r)];
            d += sym(p, r) * (hop_distance(cq, cr) - hop_distance(cp, cr));
            d += sym(q, r) * (hop_distance(cp, cr) - hop_distance(cq, cr));
        }
        return d;
    }

private:
    std::int64_t &sym(PartId a, PartId b) {
        return sym_[static_cast<std::size_t>(a) * static_cast<std::size_t>(k_) +
                    static_cast<std::size_t>(b)];
    }
    std::int64_t sym(PartId a, PartId b) const {
        return sym_[static_cast<std::size_t>(a) * static_cast<std::size_t>(k_) +
                    static_cast<std::size_t>(b)];
    }

    PartId k_;
    MeshTopology mesh_;
    std::vector<std::int64_t> sym_;
};

struct SearchState {
    Mapping map;
    std::vector<PartId> owner;    // core index -> partition id or -1
    std::vector<int> empty_cores; // unordered free list
    std::vector<int> empty_pos;   // core index -> slot in empty_cores or -1
    std::int64_t cost = 0;
};

SearchState make_state(Mapping m, const MeshTopology &mesh, const HopObjective &obj) {
    SearchState s;
    s.map = std::move(m);
    s.owner.assign(static_cast<std::size_t>(mesh.num_cores()), -1);
    s.empty_pos.assign(static_cast<std::size_t>(mesh.num_cores()), -1);
    for (PartId p = 0; p < static_cast<PartId>(s.map.core_of.size()); ++p) {
        s.owner[static_cast<std::size_t>(mesh.core_index(s.map.core_of[static_cast<std::size_t>(p)]))] = p;
    }
    for (int c = 0; c < mesh.num_cores(); ++c) {
        if (s.owner[static_cast<std::size_t>(c)] < 0) {
            s.empty_pos[static_cast<std::size_t>(c)] = static_cast<int>(s.empty_cores.size());
            s.empty_cores.push_back(c);
        }
    }
    s.cost = obj.full(s.map);
    return s;
}

void apply_swap(SearchState &s, const MeshTopology &mesh, PartId p, PartId q) {
    const std::size_t sp = static_cast<std::size_t>(p);
    const std::size_t sq = static_cast<std::size_t>(q);
    std::swap(s.map.core_of[sp], s.map.core_of[sq]);
    s.owner[static_cast<std::size_t>(mesh.core_index(s.map.core_of[sp]))] = p;
    s.owner[static_cast<std::size_t>(mesh.core_index(s.map.core_of[sq]))] = q;
}

void apply_relocate(SearchState &s, const MeshTopology &mesh, PartId p, int to_core) {
    const int from_core = mesh.core_index(s.map.core_of[static_cast<std::size_t>(p)]);
    s.map.core_of[static_cast<std::size_t>(p)] = mesh.coord_of(to_core);
    s.owner[static_cast<std::size_t>(from_core)] = -1;
    s.owner[static_cast<std::size_t>(to_core)] = p;
    // Free list: to_core leaves, from_core enters its slot.
    const int pos = s.empty_pos[static_cast<std::size_t>(to_core)];
    assert(pos >= 0);
    s.empty_cores[static_cast<std::size_t>(pos)] = from_core;
    s.empty_pos[static_cast<std::size_t>(from_core)] = pos;
    s.empty_pos[static_cast<std::size_t>(to_core)] = -1;
}

struct Move {
    enum Kind { kSwap, kRelocate } kind = kSwap;
    PartId p = -1;
    PartId q = -1;
    int core = -1;
};

std::optional<Move> propose_move(const SearchState &s, PartId k, std::mt19937_64 &rng) {
    const bool can_swap = k >= 2;
    const bool can_reloc = !s.empty_cores.empty() && k >= 1;
    if (!can_swap && !can_reloc) return std::nullopt;
    bool do_swap = can_swap;
    if (can_swap && can_reloc) {
        do_swap = std::uniform_int_distribution<int>(0, 1)(rng) == 0;
    }
    Move m;
    if (do_swap) {
        m.kind = Move::kSwap;
        m.p = std::uniform_int_distribution<PartId>(0, k - 1)(rng);
        m.q = std::uniform_int_distribution<PartId>(0, k - 2)(rng);
        if (m.q >= m.p) ++m.q;
    } else {
        m.kind = Move::kRelocate;
        m.p = std::uniform_int_distribution<PartId>(0, k - 1)(rng);
        const std::size_t i = std::uniform_int_distribution<std::size_t>(
                0, s.empty_cores.size() - 1)(rng);
        m.core = s.empty_cores[i];
    }
    return m;
}

std::int64_t move_delta(const HopObjective &obj, const SearchState &s,
        const MeshTopology &mesh, const Move &m) {
    if (m.kind == Move::kSwap) return obj.delta_swap(s.map, m.p, m.q);
    return obj.delta_relocate(s.map, m.p, mesh.coord_of(m.core));
}

void apply_move(SearchState &s, const MeshTopology &mesh, const Move &m, std::int64_t delta) {
    if (m.kind == Move::kSwap) {
        apply_swap(s, mesh, m.p, m.q);
    } else {
        apply_relocate(s, mesh, m.p, m.core);
    }
    s.cost += delta;
}

struct BudgetGuard {
    SearchBudget budget;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::uint64_t evals = 0;

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    bool exhausted() const {
        if (budget.evaluations == 0 && budget.seconds <= 0.0) return true;
        if (budget.evaluations > 0 && evals >= budget.evaluations) return true;
        if (budget.seconds > 0.0 && elapsed() >= budget.seconds) return true;
        return false;
    }
};

void note_best(SearchResult &res, const SearchState &s, std::int64_t len,
        const BudgetGuard &guard) {
    res.best.mapping = s.map;
    res.best.hop_numerator = s.cost;
    res.best.average_hop = static_cast<double>(s.cost) / static_cast<double>(len);
    res.log.push_back(ConvergencePoint{guard.elapsed(), guard.evals, res.best.average_hop});
}

SearchResult run_sa(const HopObjective &obj, std::int64_t len, const MeshTopology &mesh,
        const SearchConfig &cfg) {
    const PartId k = obj.k();
    std::mt19937_64 rng(cfg.seed);
    SearchState state = make_state(random_mapping(k, mesh, rng), mesh, obj);
    BudgetGuard guard{cfg.budget};
    SearchResult res;
    note_best(res, state, len, guard);

    double t0 = cfg.sa.t_initial;
    if (t0 <= 0.0) {
        // Sample worsening deltas so the median is accepted w.p. ~0.8 at T0.
        std::vector<double> worsening;
        for (int i = 0; i < 64; ++i) {
            const auto mv = propose_move(state, k, rng);
            if (!mv) break;
            const std::int64_t d = move_delta(obj, state, mesh, *mv);
            if (d > 0) worsening.push_back(static_cast<double>(d) / static_cast<double>(len));
        }
        if (worsening.empty()) {
            t0 = 1.0;
        } else {
            const std::size_t mid = worsening.size() / 2;
            std::nth_element(worsening.begin(), worsening.begin() + static_cast<std::ptrdiff_t>(mid),
                    worsening.end());
            t0 = worsening[mid] / -std::log(0.8);
        }
    }
    t0 = std::max(t0, cfg.sa.t_final);

    std::int64_t moves_per_temp = cfg.sa.moves_per_temp > 0
            ? cfg.sa.moves_per_temp
            : std::max<std::int64_t>(1, 10 * static_cast<std::int64_t>(k));
    double temp = t0;
    std::int64_t in_temp = 0;
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    while (!guard.exhausted()) {
        const auto mv = propose_move(state, k, rng);
        if (!mv) break;
        const std::int64_t d = move_delta(obj, state, mesh, *mv);
        ++guard.evals;
        bool accept = d <= 0;
        if (!accept) {
            accept = u01(rng) < std::exp(-(static_cast<double>(d) / static_cast<double>(len)) / temp);
        }
        if (accept) {
            apply_move(state, mesh, *mv, d);
            if (state.cost < res.best.hop_numerator) note_best(res, state, len, guard);
        }
        if (++in_temp >= moves_per_temp) {
            temp = std::max(temp * cfg.sa.cooling_ratio, cfg.sa.t_final);
            in_temp = 0;
        }
    }
    res.evaluations = guard.evals;
    return res;
}

SearchResult run_tabu(const HopObjective &obj, std::int64_t len, const MeshTopology &mesh,
        const SearchConfig &cfg) {
    const PartId k = obj.k();
    std::mt19937_64 rng(cfg.seed);
    SearchState state = make_state(random_mapping(k, mesh, rng), mesh, obj);
    BudgetGuard guard{cfg.budget};
    SearchResult res;
    note_best(res, state, len, guard);

    const int tenure = cfg.tabu.tenure > 0 ? cfg.tabu.tenure : 7 + k / 10;
    const std::int64_t all_pairs = static_cast<std::int64_t>(k) * (k - 1) / 2;
    int sample_n = cfg.tabu.neighborhood_sample > 0
            ? cfg.tabu.neighborhood_sample
            : static_cast<int>(std::min<std::int64_t>(all_pairs, 200));
    if (sample_n < 1) sample_n = 1;

    // Attribute keys: swap (p, q) -> p * k + q with p < q; relocation of p -> k*k + p.
    auto swap_key = [k](PartId p, PartId q) {
        if (p > q) std::swap(p, q);
        return static_cast<std::int64_t>(p) * k + q;
    };
    const std::int64_t reloc_base = static_cast<std::int64_t>(k) * k;
    std::unordered_map<std::int64_t, std::uint64_t> tabu_until;
    std::uint64_t iter = 0;

    struct Cand {
        Move mv;
        std::int64_t key = 0;
        std::int64_t delta = 0;
    };

    while (!guard.exhausted()) {
        std::vector<Cand> cands;
        if (k >= 2) {
            if (all_pairs <= sample_n) {
                for (PartId p = 0; p < k; ++p) {
                    for (PartId q = p + 1; q < k; ++q) {
                        cands.push_back(Cand{Move{Move::kSwap, p, q, -1}, swap_key(p, q), 0});
                    }
                }
            } else {
                for (int i = 0; i < sample_n; ++i) {
                    PartId p = std::uniform_int_distribution<PartId>(0, k - 1)(rng);
                    PartId q = std::uniform_int_distribution<PartId>(0, k - 2)(rng);
                    if (q >= p) ++q;
                    cands.push_back(Cand{Move{Move::kSwap, p, q, -1}, swap_key(p, q), 0});
                }
            }
        }
        if (!state.empty_cores.empty()) {
            std::vector<int> empties = state.empty_cores;
            std::sort(empties.begin(), empties.end());
            const std::int64_t combos =
                    static_cast<std::int64_t>(k) * static_cast<std::int64_t>(empties.size());
            const int want = k >= 2 ? std::max(1, sample_n / 4) : sample_n;
            if (combos <= want) {
                for (PartId p = 0; p < k; ++p) {
                    for (int c : empties) {
                        cands.push_back(Cand{Move{Move::kRelocate, p, -1, c}, reloc_base + p, 0});
                    }
                }
            } else {
                for (int i = 0; i < want; ++i) {
                    PartId p = std::uniform_int_distribution<PartId>(0, k - 1)(rng);
                    const std::size_t ci = std::uniform_int_distribution<std::size_t>(
                            0, empties.size() - 1)(rng);
                    cands.push_back(Cand{Move{Move::kRelocate, p, -1, empties[ci]}, reloc_base + p, 0});
                }
            }
        }
        if (cands.empty()) break;

        std::size_t evaluated = 0;
        for (Cand &c : cands) {
            if (guard.exhausted()) break;
            c.delta = move_delta(obj, state, mesh, c.mv);
            ++guard.evals;
            ++evaluated;
        }
        if (evaluated == 0) break;

        int best_adm = -1;
        int best_any = -1;
        for (std::size_t i = 0; i < evaluated; ++i) {
            const Cand &c = cands[i];
            if (best_any < 0 || c.delta < cands[static_cast<std::size_t>(best_any)].delta) {
                best_any = static_cast<int>(i);
            }
            const auto it = tabu_until.find(c.key);
            const bool is_tabu = it != tabu_until.end() && iter < it->second;
            const bool aspiration = state.cost + c.delta < res.best.hop_numerator;
            if (is_tabu && !aspiration) continue;
            if (best_adm < 0 || c.delta < cands[static_cast<std::size_t>(best_adm)].delta) {
                best_adm = static_cast<int>(i);
            }
        }
        // All-tabu neighborhoods still move (oldest restriction simply ignored).
        const Cand &chosen = cands[static_cast<std::size_t>(best_adm >= 0 ? best_adm : best_any)];
        apply_move(state, mesh, chosen.mv, chosen.delta);
        ++iter;
        tabu_until[chosen.key] = iter + static_cast<std::uint64_t>(tenure);
        if (state.cost < res.best.hop_numerator) note_best(res, state, len, guard);
    }
    res.evaluations = guard.evals;
    return res;
}

// Swap sequence that transforms `from` into `target`, repairing one
// partition per step.
std::vector<Move> moves_to(const SearchState &from, const Mapping &target,
        const MeshTopology &mesh) {
    SearchState w = from;
    const PartId k = static_cast<PartId>(w.map.core_of.size());
    std::vector<Move> seq;
    for (PartId p = 0; p < k; ++p) {
        const int tc = mesh.core_index(target.core_of[static_cast<std::size_t>(p)]);
        if (mesh.core_index(w.map.core_of[static_cast<std::size_t>(p)]) == tc) continue;
        const PartId o = w.owner[static_cast<std::size_t>(tc)];
        if (o >= 0) {
            seq.push_back(Move{Move::kSwap, p, o, -1});
            apply_swap(w, mesh, p, o);
        } else {
            seq.push_back(Move{Move::kRelocate, p, -1, tc});
            apply_relocate(w, mesh, p, tc);
        }
    }
    return seq;
}

// Replays a possibly stale move against the current occupancy: relocating
// onto an occupied core degrades to a swap with its owner.
void apply_move_normalized(SearchState &s, const MeshTopology &mesh, const Move &m) {
    if (m.kind == Move::kSwap) {
        if (m.p != m.q) apply_swap(s, mesh, m.p, m.q);
        return;
    }
    const PartId owner = s.owner[static_cast<std::size_t>(m.core)];
    if (owner == m.p) return;
    if (owner < 0) {
        apply_relocate(s, mesh, m.p, m.core);
    } else {
        apply_swap(s, mesh, m.p, owner);
    }
}

SearchResult run_pso(const HopObjective &obj, std::int64_t len, const MeshTopology &mesh,
        const SearchConfig &cfg) {
    const PartId k = obj.k();
    std::mt19937_64 rng(cfg.seed);
    BudgetGuard guard{cfg.budget};
    SearchResult res;

    struct Particle {
        SearchState state;
        Mapping pbest_map;
        std::int64_t pbest_cost;
        std::vector<Move> velocity;
    };
    const int swarm = std::max(1, cfg.pso.swarm_size);
    std::vector<Particle> parts;
    parts.reserve(static_cast<std::size_t>(swarm));

    // Particle 0 is the free initial placement; the rest cost one
    // evaluation each and are dropped if the budget dies during seeding.
    {
        SearchState s = make_state(random_mapping(k, mesh, rng), mesh, obj);
        parts.push_back(Particle{s, s.map, s.cost, {}});
        note_best(res, s, len, guard);
    }
    for (int i = 1; i < swarm; ++i) {
        if (guard.exhausted()) break;
        SearchState s = make_state(random_mapping(k, mesh, rng), mesh, obj);
        ++guard.evals;
        if (s.cost < res.best.hop_numerator) note_best(res, s, len, guard);
        parts.push_back(Particle{s, s.map, s.cost, {}});
    }

    std::uniform_real_distribution<double> u01(0.0, 1.0);
    while (!guard.exhausted()) {
        for (Particle &pt : parts) {
            if (guard.exhausted()) break;
            std::vector<Move> vel;
            for (const Move &m : pt.velocity) {
                if (u01(rng) < cfg.pso.inertia) vel.push_back(m);
            }
            for (const Move &m : moves_to(pt.state, pt.pbest_map, mesh)) {
                if (u01(rng) < cfg.pso.c_personal) vel.push_back(m);
            }
            for (const Move &m : moves_to(pt.state, res.best.mapping, mesh)) {
                if (u01(rng) < cfg.pso.c_global) vel.push_back(m);
            }
            if (vel.size() > static_cast<std::size_t>(k)) vel.resize(static_cast<std::size_t>(k));
            if (vel.empty()) {
                // Turbulence: a particle sitting on both its personal best
                // and the swarm best has no attraction left and would
                // re-evaluate the same placement until the budget dies.
                // One random move keeps it exploring the neighborhood.
                if (const auto mv = propose_move(pt.state, k, rng)) vel.push_back(*mv);
            }
            for (const Move &m : vel) apply_move_normalized(pt.state, mesh, m);
            pt.state.cost = obj.full(pt.state.map);
            ++guard.evals;
            pt.velocity = std::move(vel);
            if (pt.state.cost < pt.pbest_cost) {
                pt.pbest_cost = pt.state.cost;
                pt.pbest_map = pt.state.map;
            }
            if (pt.state.cost < res.best.hop_numerator) note_best(res, pt.state, len, guard);
        }
    }
    res.evaluations = guard.evals;
    return res;
}

void validate_config(const SearchConfig &cfg) {
    if (cfg.sa.t_final <= 0.0) throw std::invalid_argument("search: t_final must be > 0");
    if (cfg.sa.cooling_ratio <= 0.0 || cfg.sa.cooling_ratio >= 1.0) {
        throw std::invalid_argument("search: cooling_ratio must be in (0, 1)");
    }
    if (cfg.sa.moves_per_temp < 0) throw std::invalid_argument("search: moves_per_temp must be >= 0");
    if (cfg.pso.swarm_size < 1) throw std::invalid_argument("search: swarm_size must be >= 1");
    for (double prob : {cfg.pso.inertia, cfg.pso.c_personal, cfg.pso.c_global}) {
        if (prob < 0.0 || prob > 1.0) {
            throw std::invalid_argument("search: pso probabilities must be in [0, 1]");
        }
    }
    if (cfg.tabu.tenure < 0) throw std::invalid_argument("search: tenure must be >= 0");
    if (cfg.tabu.neighborhood_sample < 0) {
        throw std::invalid_argument("search: neighborhood_sample must be >= 0");
    }
    if (cfg.budget.seconds < 0.0) throw std::invalid_argument("search: budget seconds must be >= 0");
}

} // namespace

Mapping swap_neighbor(const Mapping &mapping, const MeshTopology &mesh, std::mt19937_64 &rng) {
    validate_mapping(mapping, mesh);
    const PartId k = static_cast<PartId>(mapping.core_of.size());
    SearchState s;
    s.map = mapping;
    s.owner.assign(static_cast<std::size_t>(mesh.num_cores()), -1);
    s.empty_pos.assign(static_cast<std::size_t>(mesh.num_cores()), -1);
    for (PartId p = 0; p < k; ++p) {
        s.owner[static_cast<std::size_t>(mesh.core_index(mapping.core_of[static_cast<std::size_t>(p)]))] = p;
    }
    for (int c = 0; c < mesh.num_cores(); ++c) {
        if (s.owner[static_cast<std::size_t>(c)] < 0) {
            s.empty_pos[static_cast<std::size_t>(c)] = static_cast<int>(s.empty_cores.size());
            s.empty_cores.push_back(c);
        }
    }
    const auto mv = propose_move(s, k, rng);
    if (!mv) return mapping;
    if (mv->kind == Move::kSwap) {
        apply_swap(s, mesh, mv->p, mv->q);
    } else {
        apply_relocate(s, mesh, mv->p, mv->core);
    }
    return s.map;
}

SearchResult search(const CommMatrix &comm, std::int64_t trace_length,
        const MeshTopology &mesh, const SearchConfig &config) {
    mesh.validate();
    validate_config(config);
    if (trace_length < 1) throw std::invalid_argument("search: trace_length must be >= 1");
    const PartId k = comm.k();
    if (k < 1) throw std::invalid_argument("search: need at least one partition");
    if (k > static_cast<PartId>(mesh.num_cores())) {
        throw std::invalid_argument("search: " + std::to_string(k) + " partitions exceed " +
                std::to_string(mesh.num_cores()) + " cores");
    }

    const HopObjective obj(comm, mesh);
    SearchResult res;
    switch (config.algorithm) {
        case MapAlgorithm::kSimulatedAnnealing: res = run_sa(obj, trace_length, mesh, config); break;
        case MapAlgorithm::kParticleSwarm: res = run_pso(obj, trace_length, mesh, config); break;
        case MapAlgorithm::kTabuSearch: res = run_tabu(obj, trace_length, mesh, config); break;
    }

    // Deltas are exact in integer arithmetic; recompute to hold that line.
    const std::int64_t check = obj.full(res.best.mapping);
    assert(check == res.best.hop_numerator);
    res.best.hop_numerator = check;
    res.best.average_hop = static_cast<double>(check) / static_cast<double>(trace_length);
    return res;
}

std::string convergence_csv(const SearchResult &result) {
    std::ostringstream os;
    os << "elapsed,best_H\n";
    for (const ConvergencePoint &p : result.log) {
        os << std::fixed << std::setprecision(6) << p.elapsed_seconds;
        os << ',' << std::defaultfloat << std::setprecision(17) << p.best_average_hop << '\n';
    }
    return os.str();
}

} // namespace snnmap
