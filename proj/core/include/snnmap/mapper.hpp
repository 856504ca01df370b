#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "snnmap/comm_matrix.hpp"
#include "snnmap/mapping.hpp"
#include "snnmap/mesh.hpp"
#include "snnmap/types.hpp"

namespace snnmap {

enum class MapAlgorithm { kSimulatedAnnealing, kParticleSwarm, kTabuSearch };

// Accepts "sa", "pso", "tabu".
MapAlgorithm parse_algorithm(const std::string &name);
std::string algorithm_name(MapAlgorithm alg);

struct SaParams {
    double t_initial = 0.0; // <= 0: calibrated so a median worsening move is accepted w.p. ~0.8
    double t_final = 1e-4;
    double cooling_ratio = 0.97;
    std::int64_t moves_per_temp = 0; // 0: 10 * k
};

struct PsoParams {
    int swarm_size = 20;
    double inertia = 0.4;
    double c_personal = 0.5;
    double c_global = 0.7;
};

struct TabuParams {
    int tenure = 0;              // 0: 7 + k / 10
    int neighborhood_sample = 0; // 0: min(k*(k-1)/2, 200)
};

// Whichever limit is set first stops the search; both zero means no
// proposals are made and the initial random placement is returned.
struct SearchBudget {
    double seconds = 0.0;
    std::uint64_t evaluations = 0;
};

struct SearchConfig {
    MapAlgorithm algorithm = MapAlgorithm::kSimulatedAnnealing;
    SearchBudget budget;
    std::uint64_t seed = 1;
    SaParams sa;
    PsoParams pso;
    TabuParams tabu;
};

struct Placement {
    Mapping mapping;
    double average_hop = 0.0;
    std::int64_t hop_numerator = 0;
};

struct ConvergencePoint {
    double elapsed_seconds = 0.0;
    std::uint64_t evaluations = 0;
    double best_average_hop = 0.0;
};

struct SearchResult {
    Placement best;
    std::vector<ConvergencePoint> log;
    std::uint64_t evaluations = 0;
};

// Uniform injective placement of k partitions on the mesh cores.
Mapping random_mapping(PartId k, const MeshTopology &mesh, std::mt19937_64 &rng);
Mapping random_mapping(PartId k, const MeshTopology &mesh, std::uint64_t seed);

// One random neighbor: either two partitions swap cores or one partition
// relocates to a free core (when the mesh has any).
Mapping swap_neighbor(const Mapping &mapping, const MeshTopology &mesh, std::mt19937_64 &rng);

SearchResult search(const CommMatrix &comm, std::int64_t trace_length,
        const MeshTopology &mesh, const SearchConfig &config);

// "elapsed,best_H" CSV of the convergence log.
std::string convergence_csv(const SearchResult &result);

} // namespace snnmap
