#include "snnmap/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "snnmap/errors.hpp"

namespace snnmap {

namespace {

using nlohmann::json;

bool skippable(const std::string &line)
{
    for (char ch : line) {
        if (ch == '#') {
            return true;
        }
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            return false;
        }
    }
    return true;
}

// Parses exactly `count` integer fields and rejects trailing tokens.
std::vector<std::int64_t> parse_fields(const std::string &path, std::size_t line_no,
        const std::string &line, int count)
{
    std::istringstream in(line);
    std::vector<std::int64_t> fields(count);
    for (int i = 0; i < count; ++i) {
        if (!(in >> fields[i])) {
            throw ParseError(path, line_no,
                    "expected " + std::to_string(count) + " integer fields");
        }
    }
    std::string rest;
    if (in >> rest) {
        throw ParseError(path, line_no, "trailing content '" + rest + "'");
    }
    return fields;
}

json provenance_to_json(const Provenance &prov)
{
    json p;
    p["stage"] = prov.stage;
    p["config_hash"] = prov.config_hash;
    p["params"] = prov.params;
    return p;
}

Provenance provenance_from_json(const json &j)
{
    Provenance prov;
    prov.stage = j.value("stage", "");
    prov.config_hash = j.value("config_hash", "");
    if (j.contains("params")) {
        for (const auto &[key, value] : j.at("params").items()) {
            prov.params[key] = value.get<std::string>();
        }
    }
    return prov;
}

json load_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, 0, "cannot open file");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &err) {
        throw ParseError(path, 0, err.what());
    }
}

} // namespace

SnnGraph load_graph(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, 0, "cannot open file");
    }

    std::string line;
    std::size_t line_no = 0;
    NeuronId num_neurons = -1;
    std::vector<GraphEdge> edges;

    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) {
            continue;
        }
        if (num_neurons < 0) {
            std::istringstream header(line);
            std::string keyword;
            std::int64_t n = -1;
            if (!(header >> keyword >> n) || keyword != "neurons" || n < 0) {
                throw ParseError(path, line_no, "expected header 'neurons <n>'");
            }
            num_neurons = static_cast<NeuronId>(n);
            continue;
        }
        auto fields = parse_fields(path, line_no, line, 3);
        NeuronId u = static_cast<NeuronId>(fields[0]);
        NeuronId v = static_cast<NeuronId>(fields[1]);
        Weight w = fields[2];
        if (u == v) {
            throw ParseError(path, line_no, "self-loop on neuron " + std::to_string(u));
        }
        if (u < 0 || v < 0 || u >= num_neurons || v >= num_neurons) {
            throw ParseError(path, line_no, "neuron index out of range");
        }
        if (w < 1) {
            throw ParseError(path, line_no, "edge weight must be >= 1");
        }
        edges.push_back({u, v, w});
    }
    if (num_neurons < 0) {
        throw ParseError(path, 0, "missing 'neurons <n>' header");
    }
    try {
        return SnnGraph(num_neurons, std::move(edges));
    } catch (const std::invalid_argument &err) {
        throw ParseError(path, 0, err.what());
    }
}

void save_graph(const SnnGraph &graph, const std::string &path)
{
    std::ostringstream out;
    out << "neurons " << graph.num_neurons() << '\n';
    for (const GraphEdge &e : graph.edges()) {
        out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
    }
    write_text_file(path, out.str());
}

namespace {

SpikeTrace load_trace_impl(const std::string &path, std::optional<NeuronId> num_neurons)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, 0, "cannot open file");
    }

    SpikeTrace trace;
    std::string line;
    std::size_t line_no = 0;
    std::int64_t prev_t = 0;
    bool first = true;

    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) {
            continue;
        }
        auto fields = parse_fields(path, line_no, line, 3);
        SpikeEvent e{fields[0], static_cast<NeuronId>(fields[1]),
                static_cast<NeuronId>(fields[2])};
        if (e.timestep < 0) {
            throw ParseError(path, line_no, "negative timestep");
        }
        if (!first && e.timestep < prev_t) {
            throw ParseError(path, line_no, "decreasing timestep");
        }
        if (e.src == e.dst) {
            throw ParseError(path, line_no, "self-event on neuron " + std::to_string(e.src));
        }
        if (e.src < 0 || e.dst < 0) {
            throw ParseError(path, line_no, "negative neuron id");
        }
        if (num_neurons && (e.src >= *num_neurons || e.dst >= *num_neurons)) {
            throw ParseError(path, line_no, "neuron id out of range");
        }
        prev_t = e.timestep;
        first = false;
        trace.events.push_back(e);
    }
    return trace;
}

} // namespace

SpikeTrace load_trace(const std::string &path)
{
    return load_trace_impl(path, std::nullopt);
}

SpikeTrace load_trace(const std::string &path, NeuronId num_neurons)
{
    return load_trace_impl(path, num_neurons);
}

void save_trace(const SpikeTrace &trace, const std::string &path)
{
    std::ostringstream out;
    for (const SpikeEvent &e : trace.events) {
        out << e.timestep << ' ' << e.src << ' ' << e.dst << '\n';
    }
    write_text_file(path, out.str());
}

std::string partitioning_to_json(const Partitioning &part, const Provenance *provenance)
{
    json doc;
    doc["assignment"] = part.assignment;
    doc["k"] = part.k;
    doc["capacity"] = part.capacity;
    if (provenance) {
        doc["provenance"] = provenance_to_json(*provenance);
    }
    return doc.dump(2) + "\n";
}

void save_partitioning(const Partitioning &part, const std::string &path,
        const Provenance *provenance)
{
    write_text_file(path, partitioning_to_json(part, provenance));
}

Partitioning load_partitioning(const std::string &path)
{
    json doc = load_json_file(path);
    Partitioning part;
    try {
        part.assignment = doc.at("assignment").get<std::vector<PartId>>();
        part.k = doc.at("k").get<PartId>();
        part.capacity = doc.at("capacity").get<Weight>();
    } catch (const json::exception &err) {
        throw ParseError(path, 0, err.what());
    }
    try {
        validate_partitioning(part);
    } catch (const std::invalid_argument &err) {
        throw ParseError(path, 0, err.what());
    }
    return part;
}

std::string mapping_to_json(const Mapping &map, const MeshTopology *mesh,
        const double *average_hop, const Provenance *provenance)
{
    json doc;
    json cores = json::array();
    for (Coord c : map.core_of) {
        cores.push_back(json::array({c.x, c.y}));
    }
    doc["core_of"] = std::move(cores);
    if (mesh) {
        doc["mesh"] = {{"width", mesh->width}, {"height", mesh->height}};
    }
    if (average_hop) {
        doc["average_hop"] = *average_hop;
    }
    if (provenance) {
        doc["provenance"] = provenance_to_json(*provenance);
    }
    return doc.dump(2) + "\n";
}

void save_mapping(const Mapping &map, const std::string &path, const MeshTopology *mesh,
        const double *average_hop, const Provenance *provenance)
{
    write_text_file(path, mapping_to_json(map, mesh, average_hop, provenance));
}

LoadedMapping load_mapping(const std::string &path)
{
    json doc = load_json_file(path);
    LoadedMapping loaded;
    try {
        for (const json &entry : doc.at("core_of")) {
            if (!entry.is_array() || entry.size() != 2) {
                throw ParseError(path, 0, "core_of entries must be [x, y] pairs");
            }
            loaded.mapping.core_of.push_back({entry[0].get<int>(), entry[1].get<int>()});
        }
        if (doc.contains("mesh")) {
            MeshTopology mesh;
            mesh.width = doc["mesh"].at("width").get<int>();
            mesh.height = doc["mesh"].at("height").get<int>();
            loaded.mesh = mesh;
        }
    } catch (const json::exception &err) {
        throw ParseError(path, 0, err.what());
    }
    if (loaded.mesh) {
        validate_mapping(loaded.mapping, *loaded.mesh);
    }
    return loaded;
}

std::string metrics_to_json(const MetricsReport &report,
        const std::vector<EdgeHistogramEntry> &edge_histogram, const Provenance &provenance)
{
    json doc;
    doc["metrics"] = {
            {"average_hop", report.average_hop},
            {"average_latency", report.average_latency},
            {"dynamic_energy", report.dynamic_energy},
            {"congestion_count", report.congestion_count},
            {"edge_variance", report.edge_variance},
            {"spikes_injected", report.spikes_injected},
            {"spikes_delivered", report.spikes_delivered},
    };
    json histogram = json::array();
    for (const EdgeHistogramEntry &e : edge_histogram) {
        histogram.push_back({{"from", json::array({e.from.x, e.from.y})},
                {"to", json::array({e.to.x, e.to.y})}, {"hops", e.hops}});
    }
    doc["edge_histogram"] = std::move(histogram);
    doc["provenance"] = provenance_to_json(provenance);
    return doc.dump(2) + "\n";
}

void save_metrics(const MetricsReport &report,
        const std::vector<EdgeHistogramEntry> &edge_histogram, const Provenance &provenance,
        const std::string &path)
{
    write_text_file(path, metrics_to_json(report, edge_histogram, provenance));
}

LoadedMetrics load_metrics(const std::string &path)
{
    json doc = load_json_file(path);
    LoadedMetrics loaded;
    try {
        const json &m = doc.at("metrics");
        loaded.metrics.average_hop = m.at("average_hop").get<double>();
        loaded.metrics.average_latency = m.at("average_latency").get<double>();
        loaded.metrics.dynamic_energy = m.at("dynamic_energy").get<double>();
        loaded.metrics.congestion_count = m.at("congestion_count").get<std::int64_t>();
        loaded.metrics.edge_variance = m.at("edge_variance").get<double>();
        loaded.metrics.spikes_injected = m.at("spikes_injected").get<std::int64_t>();
        loaded.metrics.spikes_delivered = m.at("spikes_delivered").get<std::int64_t>();
        for (const json &entry : doc.value("edge_histogram", json::array())) {
            EdgeHistogramEntry e;
            e.from = {entry.at("from")[0].get<int>(), entry.at("from")[1].get<int>()};
            e.to = {entry.at("to")[0].get<int>(), entry.at("to")[1].get<int>()};
            e.hops = entry.at("hops").get<std::int64_t>();
            loaded.edge_histogram.push_back(e);
        }
        if (doc.contains("provenance")) {
            loaded.provenance = provenance_from_json(doc["provenance"]);
        }
    } catch (const json::exception &err) {
        throw ParseError(path, 0, err.what());
    }
    return loaded;
}

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char ch : bytes) {
        hash ^= ch;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string fnv1a64_hex(std::string_view bytes)
{
    static const char digits[] = "0123456789abcdef";
    std::uint64_t hash = fnv1a64(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[hash & 0xf];
        hash >>= 4;
    }
    return out;
}

std::string file_fnv1a64_hex(const std::string &path)
{
    return fnv1a64_hex(read_text_file(path));
}

void write_text_file(const std::string &path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

std::string read_text_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace snnmap
