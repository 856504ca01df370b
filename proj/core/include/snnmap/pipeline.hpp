#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "snnmap/io.hpp"
#include "snnmap/mapper.hpp"
#include "snnmap/mesh.hpp"
#include "snnmap/metrics.hpp"
#include "snnmap/noc_sim.hpp"
#include "snnmap/partitioning.hpp"

namespace snnmap {

// Flat "key = value" configuration with '#' comments. Later assignments
// win, so CLI overrides are plain set() calls on top of the file.
class ConfigMap {
public:
    static ConfigMap from_file(const std::string &path);

    void set(const std::string &key, const std::string &value);
    bool has(const std::string &key) const;
    const std::map<std::string, std::string> &values() const { return values_; }

    std::string get_or(const std::string &key, const std::string &fallback) const;
    std::int64_t get_int_or(const std::string &key, std::int64_t fallback) const;
    double get_double_or(const std::string &key, double fallback) const;

    // Sorted "key = value" lines; the config hash is the FNV-1a of these
    // bytes.
    std::string canonical() const;
    std::string hash() const;

private:
    std::map<std::string, std::string> values_;
};

// "WxH", e.g. "5x5". Capacities keep their defaults.
MeshTopology parse_mesh_size(const std::string &text);

// "<n>s" wall seconds or "<n>it" objective evaluations; a bare integer
// also means evaluations.
SearchBudget parse_budget(const std::string &text);

// Comma-separated positive layer sizes, e.g. "320,320".
std::vector<int> parse_layer_list(const std::string &text);

Provenance make_provenance(std::string stage, std::map<std::string, std::string> params);

// Balanced random partitioning: neurons shuffled, dealt round-robin.
Partitioning random_balanced_partition(NeuronId n, PartId k, Weight capacity,
        std::uint64_t seed);

// Partition p sits on core p, row-major.
Mapping sequential_mapping(PartId k, const MeshTopology &mesh);

struct PipelineOutputs {
    std::string out_dir;
    std::string graph_path;
    std::string trace_path;
    MeshTopology mesh;
    std::int64_t trace_length = 0;
    Partitioning partitioning;
    Weight cut = 0;
    SearchResult search;
    SimResult sim;
    std::vector<EdgeHistogramEntry> histogram;
};

// Full flow: workload -> partition -> place -> simulate, writing
// partitioning.json, mapping.json, convergence.csv and metrics.json (plus
// graph.txt/trace.txt for synthesized workloads) into out_dir. Throws
// StageError with the failing stage's tag.
PipelineOutputs run_pipeline(const ConfigMap &config, const std::string &out_dir);

enum class BaselineKind { kRandomPartition, kSequentialMapping, kRandomMapping };

// Accepts "random-partition", "sequential-mapping", "random-mapping".
BaselineKind parse_baseline(const std::string &name);

// Same flow with one link replaced by its naive counterpart.
PipelineOutputs run_baseline(const ConfigMap &config, BaselineKind kind,
        const std::string &out_dir);

// Side-by-side metric comparison, normalized to the first run.
struct CompareRow {
    std::string name;
    std::vector<double> raw;
    std::vector<double> normalized; // NaN when the reference value is 0
};

struct ComparisonTable {
    std::vector<std::string> metric_names;
    std::vector<CompareRow> rows;

    std::string to_csv() const;
    std::string to_json() const;
};

// Requires at least two runs over the identical workload (graph/trace
// hashes, mesh, trace length); throws std::invalid_argument otherwise.
ComparisonTable report_compare(const std::vector<std::pair<std::string, LoadedMetrics>> &runs);

} // namespace snnmap
