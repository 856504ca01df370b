#include "snnmap/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "snnmap/comm_matrix.hpp"
#include "snnmap/errors.hpp"
#include "snnmap/graph.hpp"
#include "snnmap/hop_eval.hpp"
#include "snnmap/partitioner.hpp"
#include "snnmap/synth.hpp"
#include "snnmap/trace.hpp"

namespace snnmap {

namespace {

std::string trim(std::string_view sv) {
    std::size_t b = 0, e = sv.size();
    while (b < e && std::isspace(static_cast<unsigned char>(sv[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(sv[e - 1]))) --e;
    return std::string(sv.substr(b, e - b));
}

} // namespace

ConfigMap ConfigMap::from_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open config file");
    ConfigMap cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ParseError(path, lineno, "expected key = value");
        }
        const std::string key = trim(std::string_view(stripped).substr(0, eq));
        const std::string value = trim(std::string_view(stripped).substr(eq + 1));
        if (key.empty()) throw ParseError(path, lineno, "empty key");
        cfg.values_[key] = value;
    }
    return cfg;
}

void ConfigMap::set(const std::string &key, const std::string &value) {
    values_[key] = value;
}

bool ConfigMap::has(const std::string &key) const { return values_.count(key) > 0; }

std::string ConfigMap::get_or(const std::string &key, const std::string &fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::int64_t ConfigMap::get_int_or(const std::string &key, std::int64_t fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::int64_t out = 0;
    const char *first = it->second.data();
    const char *last = first + it->second.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw std::invalid_argument("config: '" + key + "' must be an integer, got '" +
                it->second + "'");
    }
    return out;
}

double ConfigMap::get_double_or(const std::string &key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception &) {
        throw std::invalid_argument("config: '" + key + "' must be a number, got '" +
                it->second + "'");
    }
}

std::string ConfigMap::canonical() const {
    std::string out;
    for (const auto &[k, v] : values_) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

std::string ConfigMap::hash() const { return fnv1a64_hex(canonical()); }

MeshTopology parse_mesh_size(const std::string &text) {
    const auto x = text.find('x');
    if (x == std::string::npos || x == 0 || x + 1 == text.size()) {
        throw std::invalid_argument("bad mesh '" + text + "' (expected WxH, e.g. 5x5)");
    }
    MeshTopology mesh;
    const auto parse_dim = [&](std::string_view sv) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (ec != std::errc{} || ptr != sv.data() + sv.size() || v < 1) {
            throw std::invalid_argument("bad mesh '" + text + "' (expected WxH, e.g. 5x5)");
        }
        return v;
    };
    mesh.width = parse_dim(std::string_view(text).substr(0, x));
    mesh.height = parse_dim(std::string_view(text).substr(x + 1));
    return mesh;
}

SearchBudget parse_budget(const std::string &text) {
    if (text.empty()) throw std::invalid_argument("empty budget");
    SearchBudget b;
    std::string num = text;
    bool seconds = false;
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, "it") == 0) {
        num = text.substr(0, text.size() - 2);
    } else if (text.back() == 's') {
        num = text.substr(0, text.size() - 1);
        seconds = true;
    }
    try {
        std::size_t used = 0;
        if (seconds) {
            b.seconds = std::stod(num, &used);
            if (used != num.size() || b.seconds <= 0.0) throw std::invalid_argument("range");
        } else {
            const long long v = std::stoll(num, &used);
            if (used != num.size() || v < 0) throw std::invalid_argument("range");
            b.evaluations = static_cast<std::uint64_t>(v);
        }
    } catch (const std::exception &) {
        throw std::invalid_argument("bad budget '" + text +
                "' (use e.g. 10s for seconds or 20000it for evaluations)");
    }
    return b;
}

std::vector<int> parse_layer_list(const std::string &text) {
    std::vector<int> layers;
    // getline swallows an empty field after a trailing comma, so catch it here.
    const std::string whole = trim(text);
    if (!whole.empty() && whole.back() == ',') {
        throw std::invalid_argument("bad layer list '" + text + "'");
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        int v = 0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size() || v < 1) {
            throw std::invalid_argument("bad layer list '" + text + "'");
        }
        layers.push_back(v);
    }
    if (layers.empty()) throw std::invalid_argument("bad layer list '" + text + "'");
    return layers;
}

Provenance make_provenance(std::string stage, std::map<std::string, std::string> params) {
    Provenance prov;
    prov.stage = std::move(stage);
    std::string canon;
    for (const auto &[k, v] : params) {
        canon += k;
        canon += " = ";
        canon += v;
        canon += '\n';
    }
    prov.config_hash = fnv1a64_hex(canon);
    prov.params = std::move(params);
    return prov;
}

Partitioning random_balanced_partition(NeuronId n, PartId k, Weight capacity,
        std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_balanced_partition: n must be >= 1");
    if (k < 1) throw std::invalid_argument("random_balanced_partition: k must be >= 1");
    const Weight share = (static_cast<Weight>(n) + k - 1) / k;
    if (share > capacity) {
        throw std::invalid_argument("random_balanced_partition: ceil(n/k) exceeds capacity");
    }
    std::vector<NeuronId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    Partitioning part;
    part.k = k;
    part.capacity = capacity;
    part.assignment.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        part.assignment[static_cast<std::size_t>(order[i])] = static_cast<PartId>(i % k);
    }
    validate_partitioning(part);
    return part;
}

Mapping sequential_mapping(PartId k, const MeshTopology &mesh) {
    mesh.validate();
    if (k < 0 || k > static_cast<PartId>(mesh.num_cores())) {
        throw std::invalid_argument("sequential_mapping: k exceeds core count");
    }
    Mapping m;
    m.core_of.reserve(static_cast<std::size_t>(k));
    for (PartId p = 0; p < k; ++p) m.core_of.push_back(mesh.coord_of(p));
    return m;
}

BaselineKind parse_baseline(const std::string &name) {
    if (name == "random-partition") return BaselineKind::kRandomPartition;
    if (name == "sequential-mapping") return BaselineKind::kSequentialMapping;
    if (name == "random-mapping") return BaselineKind::kRandomMapping;
    throw std::invalid_argument("unknown baseline '" + name +
            "' (expected random-partition, sequential-mapping, or random-mapping)");
}

namespace {

namespace fs = std::filesystem;

template <typename F>
auto stage_guard(const char *name, F &&fn) {
    try {
        return fn();
    } catch (const StageError &) {
        throw;
    } catch (const std::exception &e) {
        throw StageError(name, e.what());
    }
}

const std::set<std::string> kKnownKeys = {
        "workload.kind", "workload.graph", "workload.trace",
        "synth.layers", "synth.connect", "synth.rate", "synth.steps", "synth.seed",
        "synth.neurons", "synth.p",
        "mesh", "mesh.core_capacity", "mesh.edge_capacity",
        "partition.k", "partition.capacity", "partition.seed", "partition.undo_window",
        "partition.restarts",
        "map.algorithm", "map.budget", "map.seed",
        "map.sa.t_initial", "map.sa.t_final", "map.sa.cooling_ratio", "map.sa.moves_per_temp",
        "map.pso.swarm_size", "map.pso.inertia", "map.pso.c_personal", "map.pso.c_global",
        "map.tabu.tenure", "map.tabu.neighborhood_sample",
        "sim.edge_capacity", "sim.injection_capacity", "sim.hop_latency",
        "sim.cycles_per_timestep", "sim.congestion", "sim.e_link", "sim.e_router",
};

struct Settings {
    std::string workload_kind;
    std::string graph_path;
    std::string trace_path;
    std::vector<int> layers;
    ConnectivitySpec connect = ConnectivitySpec::full_spec();
    double rate = 0.05;
    int steps = 1000;
    std::uint64_t synth_seed = 1;
    int neurons = 0;
    double p = 0.1;
    MeshTopology mesh;
    PartId k = 0;
    Weight capacity = 0;
    std::uint64_t part_seed = 1;
    int undo_window = kDefaultUndoWindow;
    int restarts = 1;
    SearchConfig map_cfg;
    std::string budget_text;
    SimConfig sim;
    std::string congestion_mode = "recount";
};

Settings resolve(const ConfigMap &config) {
    for (const auto &[key, value] : config.values()) {
        if (!kKnownKeys.count(key)) {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
    Settings s;
    s.workload_kind = config.get_or("workload.kind",
            config.has("workload.graph") ? "files" : "");
    if (s.workload_kind == "files") {
        s.graph_path = config.get_or("workload.graph", "");
        s.trace_path = config.get_or("workload.trace", "");
        if (s.graph_path.empty() || s.trace_path.empty()) {
            throw std::invalid_argument("workload.kind=files needs workload.graph and workload.trace");
        }
    } else if (s.workload_kind == "feedforward") {
        s.layers = parse_layer_list(config.get_or("synth.layers", "320,320"));
        s.connect = ConnectivitySpec::parse(config.get_or("synth.connect", "full"));
    } else if (s.workload_kind == "random") {
        s.neurons = static_cast<int>(config.get_int_or("synth.neurons", 256));
        s.p = config.get_double_or("synth.p", 0.1);
    } else if (s.workload_kind.empty()) {
        throw std::invalid_argument(
                "no workload: set workload.kind (files, feedforward, random)");
    } else {
        throw std::invalid_argument("unknown workload.kind '" + s.workload_kind + "'");
    }
    s.rate = config.get_double_or("synth.rate", 0.05);
    s.steps = static_cast<int>(config.get_int_or("synth.steps", 1000));
    s.synth_seed = static_cast<std::uint64_t>(config.get_int_or("synth.seed", 1));

    s.mesh = parse_mesh_size(config.get_or("mesh", "5x5"));
    s.mesh.core_capacity = config.get_int_or("mesh.core_capacity", 256);
    s.mesh.edge_capacity = config.get_int_or("mesh.edge_capacity", 256);
    s.mesh.validate();

    s.k = static_cast<PartId>(config.get_int_or("partition.k", 0));
    s.capacity = config.get_int_or("partition.capacity", 0);
    s.part_seed = static_cast<std::uint64_t>(config.get_int_or("partition.seed", 1));
    s.undo_window = static_cast<int>(config.get_int_or("partition.undo_window", kDefaultUndoWindow));
    s.restarts = static_cast<int>(config.get_int_or("partition.restarts", 1));
    if (s.restarts < 1) throw std::invalid_argument("partition.restarts must be >= 1");

    s.map_cfg.algorithm = parse_algorithm(config.get_or("map.algorithm", "sa"));
    s.budget_text = config.get_or("map.budget", "20000it");
    s.map_cfg.budget = parse_budget(s.budget_text);
    s.map_cfg.seed = static_cast<std::uint64_t>(config.get_int_or("map.seed", 1));
    s.map_cfg.sa.t_initial = config.get_double_or("map.sa.t_initial", 0.0);
    s.map_cfg.sa.t_final = config.get_double_or("map.sa.t_final", 1e-4);
    s.map_cfg.sa.cooling_ratio = config.get_double_or("map.sa.cooling_ratio", 0.97);
    s.map_cfg.sa.moves_per_temp = config.get_int_or("map.sa.moves_per_temp", 0);
    s.map_cfg.pso.swarm_size = static_cast<int>(config.get_int_or("map.pso.swarm_size", 20));
    s.map_cfg.pso.inertia = config.get_double_or("map.pso.inertia", 0.4);
    s.map_cfg.pso.c_personal = config.get_double_or("map.pso.c_personal", 0.5);
    s.map_cfg.pso.c_global = config.get_double_or("map.pso.c_global", 0.7);
    s.map_cfg.tabu.tenure = static_cast<int>(config.get_int_or("map.tabu.tenure", 0));
    s.map_cfg.tabu.neighborhood_sample =
            static_cast<int>(config.get_int_or("map.tabu.neighborhood_sample", 0));

    s.sim.edge_capacity = config.get_int_or("sim.edge_capacity", 0);
    if (s.sim.edge_capacity == 0) s.sim.edge_capacity = s.mesh.edge_capacity;
    s.sim.injection_capacity = config.get_int_or("sim.injection_capacity", 0);
    if (s.sim.injection_capacity == 0) s.sim.injection_capacity = s.sim.edge_capacity;
    s.sim.hop_latency = static_cast<int>(config.get_int_or("sim.hop_latency", 1));
    s.sim.cycles_per_timestep = static_cast<int>(config.get_int_or("sim.cycles_per_timestep", 1));
    s.congestion_mode = config.get_or("sim.congestion", "recount");
    if (s.congestion_mode == "recount") {
        s.sim.congestion_recount = true;
    } else if (s.congestion_mode == "once") {
        s.sim.congestion_recount = false;
    } else {
        throw std::invalid_argument("sim.congestion must be recount or once");
    }
    s.sim.e_link = config.get_double_or("sim.e_link", 1.0);
    s.sim.e_router = config.get_double_or("sim.e_router", 1.0);
    return s;
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string mesh_name(const MeshTopology &mesh) {
    return std::to_string(mesh.width) + "x" + std::to_string(mesh.height);
}

PipelineOutputs run_impl(const ConfigMap &config, const std::string &out_dir,
        std::optional<BaselineKind> baseline) {
    const Settings s = stage_guard("config", [&] { return resolve(config); });

    PipelineOutputs out;
    out.out_dir = out_dir;
    out.mesh = s.mesh;
    fs::create_directories(out_dir);

    // Workload: load the files or synthesize and persist them next to the
    // other artifacts.
    SnnGraph graph;
    SpikeTrace trace;
    stage_guard("ingest", [&] {
        if (s.workload_kind == "files") {
            out.graph_path = s.graph_path;
            out.trace_path = s.trace_path;
            graph = load_graph(out.graph_path);
            trace = load_trace(out.trace_path, graph.num_neurons());
        } else {
            SynthResult synth = s.workload_kind == "feedforward"
                    ? gen_feedforward(s.layers, s.connect, s.rate, s.steps, s.synth_seed)
                    : gen_random(s.neurons, s.p, s.rate, s.steps, s.synth_seed);
            graph = std::move(synth.graph);
            trace = std::move(synth.trace);
            out.graph_path = (fs::path(out_dir) / "graph.txt").string();
            out.trace_path = (fs::path(out_dir) / "trace.txt").string();
            save_graph(graph, out.graph_path);
            save_trace(trace, out.trace_path);
        }
        return 0;
    });
    const std::string graph_hash = file_fnv1a64_hex(out.graph_path);
    const std::string trace_hash = file_fnv1a64_hex(out.trace_path);
    out.trace_length = static_cast<std::int64_t>(trace.length());

    const PartId k = s.k > 0
            ? s.k
            : static_cast<PartId>((graph.num_neurons() + s.mesh.core_capacity - 1) /
                      s.mesh.core_capacity);
    const Weight capacity = s.capacity > 0 ? s.capacity : s.mesh.core_capacity;

    stage_guard("partition", [&] {
        if (k > static_cast<PartId>(s.mesh.num_cores())) {
            throw std::invalid_argument(std::to_string(k) + " partitions exceed the " +
                    std::to_string(s.mesh.num_cores()) + " cores of the " + mesh_name(s.mesh) +
                    " mesh; use a larger mesh or raise mesh.core_capacity");
        }
        if (baseline == BaselineKind::kRandomPartition) {
            out.partitioning = random_balanced_partition(graph.num_neurons(), k, capacity,
                    s.part_seed);
            return 0;
        }
        std::vector<std::future<Partitioning>> futs;
        futs.reserve(static_cast<std::size_t>(s.restarts));
        for (int r = 0; r < s.restarts; ++r) {
            futs.push_back(std::async(std::launch::async, [&, r] {
                return partition(graph, k, capacity, s.part_seed + static_cast<std::uint64_t>(r),
                        s.undo_window);
            }));
        }
        Weight best_cut = 0;
        for (int r = 0; r < s.restarts; ++r) {
            Partitioning cand = futs[static_cast<std::size_t>(r)].get();
            const Weight cand_cut = cut_weight(graph, cand);
            if (r == 0 || cand_cut < best_cut) {
                best_cut = cand_cut;
                out.partitioning = std::move(cand);
            }
        }
        return 0;
    });
    out.cut = cut_weight(graph, out.partitioning);

    std::map<std::string, std::string> part_params = {
            {"graph_hash", graph_hash},
            {"k", std::to_string(k)},
            {"capacity", std::to_string(capacity)},
            {"seed", std::to_string(s.part_seed)},
            {"undo_window", std::to_string(s.undo_window)},
            {"restarts", std::to_string(s.restarts)},
            {"num_neurons", std::to_string(graph.num_neurons())},
            {"cut", std::to_string(out.cut)},
    };
    if (baseline == BaselineKind::kRandomPartition) part_params["baseline"] = "random-partition";
    const std::string part_path = (fs::path(out_dir) / "partitioning.json").string();
    const Provenance part_prov = make_provenance("partition", std::move(part_params));
    save_partitioning(out.partitioning, part_path, &part_prov);

    stage_guard("map", [&] {
        if (trace.length() == 0) {
            throw std::invalid_argument("trace is empty: average hop is undefined");
        }
        const CommMatrix comm = comm_matrix(trace, out.partitioning);
        if (baseline == BaselineKind::kSequentialMapping ||
                baseline == BaselineKind::kRandomMapping) {
            Mapping m = baseline == BaselineKind::kSequentialMapping
                    ? sequential_mapping(k, s.mesh)
                    : random_mapping(k, s.mesh, s.map_cfg.seed);
            out.search.best.mapping = std::move(m);
            out.search.best.hop_numerator = average_hop_numerator(comm, out.search.best.mapping);
            out.search.best.average_hop = static_cast<double>(out.search.best.hop_numerator) /
                    static_cast<double>(out.trace_length);
            out.search.log.push_back(
                    ConvergencePoint{0.0, 0, out.search.best.average_hop});
        } else {
            out.search = search(comm, out.trace_length, s.mesh, s.map_cfg);
        }
        return 0;
    });

    std::map<std::string, std::string> map_params = {
            {"graph_hash", graph_hash},
            {"trace_hash", trace_hash},
            {"partitioning_hash", file_fnv1a64_hex(part_path)},
            {"mesh", mesh_name(s.mesh)},
            {"k", std::to_string(k)},
            {"trace_length", std::to_string(out.trace_length)},
            {"seed", std::to_string(s.map_cfg.seed)},
    };
    if (baseline == BaselineKind::kSequentialMapping) {
        map_params["baseline"] = "sequential-mapping";
    } else if (baseline == BaselineKind::kRandomMapping) {
        map_params["baseline"] = "random-mapping";
    } else {
        map_params["algorithm"] = algorithm_name(s.map_cfg.algorithm);
        map_params["budget"] = s.budget_text;
    }
    const Provenance map_prov = make_provenance("map", std::move(map_params));
    save_mapping(out.search.best.mapping, (fs::path(out_dir) / "mapping.json").string(),
            &s.mesh, &out.search.best.average_hop, &map_prov);
    write_text_file((fs::path(out_dir) / "convergence.csv").string(),
            convergence_csv(out.search));

    stage_guard("simulate", [&] {
        out.sim = simulate(trace, out.partitioning, out.search.best.mapping, s.mesh, s.sim);
        out.histogram = make_edge_histogram(s.mesh, out.sim.edge_hops);
        return 0;
    });

    std::map<std::string, std::string> sim_params = {
            {"graph_hash", graph_hash},
            {"trace_hash", trace_hash},
            {"mesh", mesh_name(s.mesh)},
            {"trace_length", std::to_string(out.trace_length)},
            {"k", std::to_string(k)},
            {"capacity", std::to_string(capacity)},
            {"partition_seed", std::to_string(s.part_seed)},
            {"map_seed", std::to_string(s.map_cfg.seed)},
            {"edge_capacity", std::to_string(s.sim.edge_capacity)},
            {"injection_capacity", std::to_string(s.sim.injection_capacity)},
            {"hop_latency", std::to_string(s.sim.hop_latency)},
            {"cycles_per_timestep", std::to_string(s.sim.cycles_per_timestep)},
            {"congestion", s.congestion_mode},
            {"e_link", fmt_double(s.sim.e_link)},
            {"e_router", fmt_double(s.sim.e_router)},
    };
    if (baseline == BaselineKind::kRandomPartition) {
        sim_params["baseline"] = "random-partition";
    } else if (baseline == BaselineKind::kSequentialMapping) {
        sim_params["baseline"] = "sequential-mapping";
    } else if (baseline == BaselineKind::kRandomMapping) {
        sim_params["baseline"] = "random-mapping";
    } else {
        sim_params["algorithm"] = algorithm_name(s.map_cfg.algorithm);
        sim_params["budget"] = s.budget_text;
    }
    const Provenance sim_prov = make_provenance("simulate", std::move(sim_params));
    save_metrics(out.sim.metrics, out.histogram, sim_prov,
            (fs::path(out_dir) / "metrics.json").string());
    return out;
}

} // namespace

PipelineOutputs run_pipeline(const ConfigMap &config, const std::string &out_dir) {
    return run_impl(config, out_dir, std::nullopt);
}

PipelineOutputs run_baseline(const ConfigMap &config, BaselineKind kind,
        const std::string &out_dir) {
    return run_impl(config, out_dir, kind);
}

namespace {

const std::vector<std::string> kCompareMetrics = {
        "average_hop", "average_latency", "dynamic_energy", "congestion_count", "edge_variance"};

double metric_value(const MetricsReport &m, const std::string &name) {
    if (name == "average_hop") return m.average_hop;
    if (name == "average_latency") return m.average_latency;
    if (name == "dynamic_energy") return m.dynamic_energy;
    if (name == "congestion_count") return static_cast<double>(m.congestion_count);
    return m.edge_variance;
}

} // namespace

ComparisonTable report_compare(const std::vector<std::pair<std::string, LoadedMetrics>> &runs) {
    if (runs.size() < 2) {
        throw std::invalid_argument("compare: need at least two runs");
    }
    // All runs must describe the same workload: any identity key two runs
    // share must agree, and at least one key must be present everywhere.
    static const char *kIdentity[] = {"graph_hash", "trace_hash", "mesh", "trace_length"};
    bool common_key = false;
    for (const char *key : kIdentity) {
        std::optional<std::string> ref;
        std::string ref_run;
        bool in_all = true;
        for (const auto &[name, lm] : runs) {
            const auto it = lm.provenance.params.find(key);
            if (it == lm.provenance.params.end()) {
                in_all = false;
                continue;
            }
            if (!ref) {
                ref = it->second;
                ref_run = name;
            } else if (it->second != *ref) {
                throw std::invalid_argument("compare: runs '" + ref_run + "' and '" + name +
                        "' disagree on " + key + "; refusing to compare different workloads");
            }
        }
        if (ref && in_all) common_key = true;
    }
    if (!common_key) {
        throw std::invalid_argument("compare: artifacts share no workload identity");
    }

    ComparisonTable table;
    table.metric_names = kCompareMetrics;
    for (const auto &[name, lm] : runs) {
        CompareRow row;
        row.name = name;
        for (const std::string &metric : kCompareMetrics) {
            row.raw.push_back(metric_value(lm.metrics, metric));
        }
        table.rows.push_back(std::move(row));
    }
    for (std::size_t mi = 0; mi < kCompareMetrics.size(); ++mi) {
        const double ref = table.rows[0].raw[mi];
        for (CompareRow &row : table.rows) {
            double norm;
            if (ref != 0.0) {
                norm = row.raw[mi] / ref;
            } else {
                norm = row.raw[mi] == 0.0 ? 1.0 : std::numeric_limits<double>::quiet_NaN();
            }
            row.normalized.push_back(norm);
        }
    }
    return table;
}

std::string ComparisonTable::to_csv() const {
    std::ostringstream os;
    os << "run";
    for (const std::string &m : metric_names) os << ',' << m;
    os << '\n';
    os << std::setprecision(17);
    for (const CompareRow &row : rows) {
        os << row.name;
        for (const double v : row.normalized) os << ',' << v;
        os << '\n';
    }
    return os.str();
}

std::string ComparisonTable::to_json() const {
    nlohmann::json j;
    j["metrics"] = metric_names;
    nlohmann::json runs = nlohmann::json::array();
    for (const CompareRow &row : rows) {
        nlohmann::json r;
        r["name"] = row.name;
        for (std::size_t i = 0; i < metric_names.size(); ++i) {
            r["raw"][metric_names[i]] = row.raw[i];
            r["normalized"][metric_names[i]] = row.normalized[i]; // NaN serializes as null
        }
        runs.push_back(std::move(r));
    }
    j["runs"] = std::move(runs);
    return j.dump(2) + "\n";
}

} // namespace snnmap
