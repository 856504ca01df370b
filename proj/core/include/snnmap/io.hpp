#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snnmap/graph.hpp"
#include "snnmap/mapping.hpp"
#include "snnmap/mesh.hpp"
#include "snnmap/metrics.hpp"
#include "snnmap/partitioning.hpp"
#include "snnmap/trace.hpp"

namespace snnmap {

// Graph file: UTF-8 text, header "neurons <n>", body lines "i j w".
// Blank lines and lines starting with '#' are skipped. Duplicate edges,
// self-loops and out-of-range indices are rejected with the line number.
SnnGraph load_graph(const std::string &path);
void save_graph(const SnnGraph &graph, const std::string &path);

// Trace file: UTF-8 text, lines "t src dst", t non-decreasing. The
// two-argument form additionally bounds neuron ids by num_neurons.
SpikeTrace load_trace(const std::string &path);
SpikeTrace load_trace(const std::string &path, NeuronId num_neurons);
void save_trace(const SpikeTrace &trace, const std::string &path);

// JSON artifacts. The *_to_json functions return the exact bytes the
// save_* functions write.
std::string partitioning_to_json(const Partitioning &part,
        const Provenance *provenance = nullptr);
void save_partitioning(const Partitioning &part, const std::string &path,
        const Provenance *provenance = nullptr);
Partitioning load_partitioning(const std::string &path);

struct LoadedMapping {
    Mapping mapping;
    std::optional<MeshTopology> mesh; // geometry only, when embedded
};

std::string mapping_to_json(const Mapping &map, const MeshTopology *mesh = nullptr,
        const double *average_hop = nullptr, const Provenance *provenance = nullptr);
void save_mapping(const Mapping &map, const std::string &path,
        const MeshTopology *mesh = nullptr, const double *average_hop = nullptr,
        const Provenance *provenance = nullptr);
LoadedMapping load_mapping(const std::string &path);

struct LoadedMetrics {
    MetricsReport metrics;
    std::vector<EdgeHistogramEntry> edge_histogram;
    Provenance provenance;
};

std::string metrics_to_json(const MetricsReport &report,
        const std::vector<EdgeHistogramEntry> &edge_histogram,
        const Provenance &provenance);
void save_metrics(const MetricsReport &report,
        const std::vector<EdgeHistogramEntry> &edge_histogram,
        const Provenance &provenance, const std::string &path);
LoadedMetrics load_metrics(const std::string &path);

// FNV-1a, used for config hashes and input-file identity in provenance.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);
std::string file_fnv1a64_hex(const std::string &path);

void write_text_file(const std::string &path, std::string_view content);
std::string read_text_file(const std::string &path);

} // namespace snnmap
