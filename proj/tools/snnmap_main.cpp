// Command-line front end: synth, partition, map, eval-hop, simulate,
// pipeline, compare.

#include <filesystem>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "snnmap/comm_matrix.hpp"
#include "snnmap/errors.hpp"
#include "snnmap/hop_eval.hpp"
#include "snnmap/io.hpp"
#include "snnmap/mapper.hpp"
#include "snnmap/noc_sim.hpp"
#include "snnmap/partitioner.hpp"
#include "snnmap/pipeline.hpp"
#include "snnmap/synth.hpp"

namespace {

using namespace snnmap;

namespace fs = std::filesystem;

// Re-tag any failure with the subcommand so scripts can tell which stage
// died.
template <typename F>
void guarded(const char *stage, F &&fn) {
    try {
        fn();
    } catch (const StageError &) {
        throw;
    } catch (const std::exception &e) {
        throw StageError(stage, e.what());
    }
}

struct SynthOpts {
    std::string mode; // feedforward | random
    std::string layers = "320,320";
    std::string connect = "full";
    int neurons = 256;
    double p = 0.1;
    double rate = 0.05;
    int steps = 1000;
    std::uint64_t seed = 1;
    std::string out_graph;
    std::string out_trace;
};

void run_synth(const SynthOpts &o) {
    guarded("synth", [&] {
        SynthResult r = o.mode == "feedforward"
                ? gen_feedforward(parse_layer_list(o.layers), ConnectivitySpec::parse(o.connect),
                          o.rate, o.steps, o.seed)
                : gen_random(o.neurons, o.p, o.rate, o.steps, o.seed);
        save_graph(r.graph, o.out_graph);
        save_trace(r.trace, o.out_trace);
        std::cout << "neurons " << r.graph.num_neurons() << ", edges " << r.graph.num_edges()
                  << ", events " << r.trace.length() << "\n";
    });
}

struct PartitionOpts {
    std::string graph;
    PartId k = 0;
    Weight capacity = 256;
    std::uint64_t seed = 1;
    int undo_window = kDefaultUndoWindow;
    int restarts = 1;
    std::string out;
};

void run_partition(const PartitionOpts &o) {
    guarded("partition", [&] {
        if (o.restarts < 1) throw std::invalid_argument("--restarts must be >= 1");
        const SnnGraph graph = load_graph(o.graph);
        std::vector<std::future<Partitioning>> futs;
        for (int r = 0; r < o.restarts; ++r) {
            futs.push_back(std::async(std::launch::async, [&, r] {
                return partition(graph, o.k, o.capacity,
                        o.seed + static_cast<std::uint64_t>(r), o.undo_window);
            }));
        }
        Partitioning best;
        Weight best_cut = 0;
        for (int r = 0; r < o.restarts; ++r) {
            Partitioning cand = futs[static_cast<std::size_t>(r)].get();
            const Weight cut = cut_weight(graph, cand);
            if (r == 0 || cut < best_cut) {
                best_cut = cut;
                best = std::move(cand);
            }
        }
        const Provenance prov = make_provenance("partition", {
                {"graph_hash", file_fnv1a64_hex(o.graph)},
                {"k", std::to_string(o.k)},
                {"capacity", std::to_string(o.capacity)},
                {"seed", std::to_string(o.seed)},
                {"undo_window", std::to_string(o.undo_window)},
                {"restarts", std::to_string(o.restarts)},
                {"num_neurons", std::to_string(graph.num_neurons())},
                {"cut", std::to_string(best_cut)},
        });
        save_partitioning(best, o.out, &prov);
        std::cout << "cut " << best_cut << " -> " << o.out << "\n";
    });
}

struct MapOpts {
    std::string trace;
    std::string partitioning;
    std::string mesh = "5x5";
    std::string alg = "sa";
    std::string budget = "20000it";
    std::uint64_t seed = 1;
    std::string out;
    std::string log;
    SaParams sa;
    PsoParams pso;
    TabuParams tabu;
};

void run_map(const MapOpts &o) {
    guarded("map", [&] {
        const Partitioning part = load_partitioning(o.partitioning);
        const SpikeTrace trace =
                load_trace(o.trace, static_cast<NeuronId>(part.assignment.size()));
        if (trace.length() == 0) {
            throw std::invalid_argument("trace is empty: average hop is undefined");
        }
        const MeshTopology mesh = parse_mesh_size(o.mesh);
        SearchConfig cfg;
        cfg.algorithm = parse_algorithm(o.alg);
        cfg.budget = parse_budget(o.budget);
        cfg.seed = o.seed;
        cfg.sa = o.sa;
        cfg.pso = o.pso;
        cfg.tabu = o.tabu;
        const CommMatrix comm = comm_matrix(trace, part);
        const SearchResult res = search(comm, static_cast<std::int64_t>(trace.length()),
                mesh, cfg);
        const Provenance prov = make_provenance("map", {
                {"trace_hash", file_fnv1a64_hex(o.trace)},
                {"partitioning_hash", file_fnv1a64_hex(o.partitioning)},
                {"mesh", std::to_string(mesh.width) + "x" + std::to_string(mesh.height)},
                {"algorithm", algorithm_name(cfg.algorithm)},
                {"budget", o.budget},
                {"seed", std::to_string(o.seed)},
                {"k", std::to_string(part.k)},
                {"trace_length", std::to_string(trace.length())},
        });
        save_mapping(res.best.mapping, o.out, &mesh, &res.best.average_hop, &prov);
        if (!o.log.empty()) write_text_file(o.log, convergence_csv(res));
        std::cout << std::setprecision(17) << "H " << res.best.average_hop << " after "
                  << res.evaluations << " evaluations -> " << o.out << "\n";
    });
}

struct EvalHopOpts {
    std::string trace;
    std::string partitioning;
    std::string mapping;
};

void run_eval_hop(const EvalHopOpts &o) {
    guarded("eval-hop", [&] {
        const Partitioning part = load_partitioning(o.partitioning);
        const SpikeTrace trace =
                load_trace(o.trace, static_cast<NeuronId>(part.assignment.size()));
        const LoadedMapping lm = load_mapping(o.mapping);
        const CommMatrix comm = comm_matrix(trace, part);
        const double h = average_hop(comm, lm.mapping,
                static_cast<std::int64_t>(trace.length()));
        std::cout << std::setprecision(17) << h << "\n";
    });
}

struct SimulateOpts {
    std::string trace;
    std::string partitioning;
    std::string mapping;
    std::string mesh; // empty: take the geometry embedded in the mapping
    std::int64_t edge_capacity = 256;      // 0 = unlimited
    std::int64_t injection_capacity = 256; // 0 = unlimited
    int hop_latency = 1;
    int cycles_per_timestep = 1;
    std::string congestion = "recount";
    double e_link = 1.0;
    double e_router = 1.0;
    std::string out;
};

void run_simulate(const SimulateOpts &o) {
    guarded("simulate", [&] {
        const Partitioning part = load_partitioning(o.partitioning);
        const SpikeTrace trace =
                load_trace(o.trace, static_cast<NeuronId>(part.assignment.size()));
        const LoadedMapping lm = load_mapping(o.mapping);
        MeshTopology mesh;
        if (!o.mesh.empty()) {
            mesh = parse_mesh_size(o.mesh);
        } else if (lm.mesh) {
            mesh = *lm.mesh;
        } else {
            throw std::invalid_argument("no mesh: pass --mesh WxH or use a mapping that embeds it");
        }
        SimConfig cfg;
        cfg.edge_capacity = o.edge_capacity == 0 ? kUnlimitedCapacity : o.edge_capacity;
        cfg.injection_capacity =
                o.injection_capacity == 0 ? kUnlimitedCapacity : o.injection_capacity;
        cfg.hop_latency = o.hop_latency;
        cfg.cycles_per_timestep = o.cycles_per_timestep;
        if (o.congestion == "recount") {
            cfg.congestion_recount = true;
        } else if (o.congestion == "once") {
            cfg.congestion_recount = false;
        } else {
            throw std::invalid_argument("--congestion must be recount or once");
        }
        cfg.e_link = o.e_link;
        cfg.e_router = o.e_router;
        const SimResult res = simulate(trace, part, lm.mapping, mesh, cfg);
        const Provenance prov = make_provenance("simulate", {
                {"trace_hash", file_fnv1a64_hex(o.trace)},
                {"partitioning_hash", file_fnv1a64_hex(o.partitioning)},
                {"mapping_hash", file_fnv1a64_hex(o.mapping)},
                {"mesh", std::to_string(mesh.width) + "x" + std::to_string(mesh.height)},
                {"trace_length", std::to_string(trace.length())},
                {"edge_capacity", std::to_string(o.edge_capacity)},
                {"injection_capacity", std::to_string(o.injection_capacity)},
                {"hop_latency", std::to_string(o.hop_latency)},
                {"cycles_per_timestep", std::to_string(o.cycles_per_timestep)},
                {"congestion", o.congestion},
                {"e_link", std::to_string(o.e_link)},
                {"e_router", std::to_string(o.e_router)},
        });
        save_metrics(res.metrics, make_edge_histogram(mesh, res.edge_hops), prov, o.out);
        std::cout << std::setprecision(17) << "H " << res.metrics.average_hop << ", latency "
                  << res.metrics.average_latency << ", energy " << res.metrics.dynamic_energy
                  << ", congestion " << res.metrics.congestion_count << ", edge variance "
                  << res.metrics.edge_variance << " -> " << o.out << "\n";
    });
}

struct PipelineOpts {
    std::string config;
    std::vector<std::string> sets;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::string baseline;
};

void run_pipeline_cmd(const PipelineOpts &o) {
    ConfigMap cfg;
    guarded("config", [&] {
        if (!o.config.empty()) cfg = ConfigMap::from_file(o.config);
        for (const std::string &kv : o.sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("--set needs key=value, got '" + kv + "'");
            }
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (o.seed) {
            // One master seed: fills every stage seed not set explicitly.
            for (const char *key : {"synth.seed", "partition.seed", "map.seed"}) {
                if (!cfg.has(key)) cfg.set(key, std::to_string(*o.seed));
            }
        }
    });
    const PipelineOutputs out = o.baseline.empty()
            ? run_pipeline(cfg, o.out_dir)
            : run_baseline(cfg, parse_baseline(o.baseline), o.out_dir);
    const MetricsReport &m = out.sim.metrics;
    std::cout << std::setprecision(17) << "cut " << out.cut << ", H " << m.average_hop
              << ", latency " << m.average_latency << ", energy " << m.dynamic_energy
              << ", congestion " << m.congestion_count << ", edge variance " << m.edge_variance
              << "\nartifacts in " << out.out_dir << "\n";
}

struct CompareOpts {
    std::vector<std::string> metrics_files;
    std::string out_csv;
    std::string out_json;
};

// metrics.json files all share a basename, so prefer the run directory as
// the label.
std::string run_label(const std::string &path) {
    const fs::path p(path);
    if (p.stem() == "metrics" && p.has_parent_path()) {
        const std::string dir = p.parent_path().filename().string();
        if (!dir.empty()) return dir;
    }
    return p.stem().string();
}

void run_compare(const CompareOpts &o) {
    guarded("compare", [&] {
        std::vector<std::pair<std::string, LoadedMetrics>> runs;
        std::map<std::string, int> seen;
        for (const std::string &path : o.metrics_files) {
            std::string label = run_label(path);
            if (const int n = seen[label]++; n > 0) label += "-" + std::to_string(n + 1);
            runs.emplace_back(std::move(label), load_metrics(path));
        }
        const ComparisonTable table = report_compare(runs);
        const std::string csv = table.to_csv();
        if (!o.out_csv.empty()) write_text_file(o.out_csv, csv);
        if (!o.out_json.empty()) write_text_file(o.out_json, table.to_json());
        std::cout << csv;
    });
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"SNN-to-mesh deployment toolchain: partition, place, simulate"};
    app.require_subcommand(1);

    SynthOpts synth_o;
    CLI::App *synth = app.add_subcommand("synth", "Generate a workload (graph + spike trace)");
    synth->require_subcommand(1);
    CLI::App *ff = synth->add_subcommand("feedforward", "Layered feedforward network");
    ff->add_option("--layers", synth_o.layers, "Comma-separated layer sizes")->required();
    ff->add_option("--connect", synth_o.connect, "full or random:<p>");
    CLI::App *rnd = synth->add_subcommand("random", "Erdos-Renyi network");
    rnd->add_option("--neurons", synth_o.neurons, "Neuron count")->required();
    rnd->add_option("--p", synth_o.p, "Edge probability");
    for (CLI::App *sub : {ff, rnd}) {
        sub->add_option("--rate", synth_o.rate, "Firing probability per neuron per timestep");
        sub->add_option("--steps", synth_o.steps, "Timesteps");
        sub->add_option("--seed", synth_o.seed, "RNG seed");
        sub->add_option("--out-graph", synth_o.out_graph, "Graph output path")->required();
        sub->add_option("--out-trace", synth_o.out_trace, "Trace output path")->required();
    }
    ff->callback([&] { synth_o.mode = "feedforward"; run_synth(synth_o); });
    rnd->callback([&] { synth_o.mode = "random"; run_synth(synth_o); });

    PartitionOpts part_o;
    CLI::App *part = app.add_subcommand("partition", "Partition a graph to minimize cut spikes");
    part->add_option("--graph", part_o.graph, "Graph file")->required();
    part->add_option("--k", part_o.k, "Partition count")->required();
    part->add_option("--capacity", part_o.capacity, "Neurons per partition");
    part->add_option("--seed", part_o.seed, "RNG seed");
    part->add_option("--undo-window", part_o.undo_window,
            "Non-improving refinement moves before stopping");
    part->add_option("--restarts", part_o.restarts, "Independent seeds, best cut wins");
    part->add_option("--out", part_o.out, "Output partitioning.json")->required();
    part->callback([&] { run_partition(part_o); });

    MapOpts map_o;
    CLI::App *map_cmd = app.add_subcommand("map", "Place partitions on the mesh");
    map_cmd->add_option("--trace", map_o.trace, "Trace file")->required();
    map_cmd->add_option("--partitioning", map_o.partitioning, "partitioning.json")->required();
    map_cmd->add_option("--mesh", map_o.mesh, "Mesh size WxH");
    map_cmd->add_option("--alg", map_o.alg, "sa, pso, or tabu");
    map_cmd->add_option("--budget", map_o.budget, "Search budget: 10s or 20000it");
    map_cmd->add_option("--seed", map_o.seed, "RNG seed");
    map_cmd->add_option("--out", map_o.out, "Output mapping.json")->required();
    map_cmd->add_option("--log", map_o.log, "Convergence CSV path");
    map_cmd->add_option("--sa-t-initial", map_o.sa.t_initial, "SA initial temperature (0 = auto)");
    map_cmd->add_option("--sa-t-final", map_o.sa.t_final, "SA floor temperature");
    map_cmd->add_option("--sa-cooling", map_o.sa.cooling_ratio, "SA geometric cooling ratio");
    map_cmd->add_option("--sa-moves-per-temp", map_o.sa.moves_per_temp,
            "SA moves per temperature (0 = 10k)");
    map_cmd->add_option("--pso-swarm", map_o.pso.swarm_size, "PSO particles");
    map_cmd->add_option("--pso-inertia", map_o.pso.inertia, "PSO velocity retention");
    map_cmd->add_option("--pso-c-personal", map_o.pso.c_personal, "PSO personal-best pull");
    map_cmd->add_option("--pso-c-global", map_o.pso.c_global, "PSO global-best pull");
    map_cmd->add_option("--tabu-tenure", map_o.tabu.tenure, "Tabu tenure (0 = 7 + k/10)");
    map_cmd->add_option("--tabu-sample", map_o.tabu.neighborhood_sample,
            "Tabu neighborhood sample size (0 = auto)");
    map_cmd->callback([&] { run_map(map_o); });

    EvalHopOpts eval_o;
    CLI::App *eval = app.add_subcommand("eval-hop", "Print the average hop count H");
    eval->add_option("--trace", eval_o.trace, "Trace file")->required();
    eval->add_option("--partitioning", eval_o.partitioning, "partitioning.json")->required();
    eval->add_option("--mapping", eval_o.mapping, "mapping.json")->required();
    eval->callback([&] { run_eval_hop(eval_o); });

    SimulateOpts sim_o;
    CLI::App *sim = app.add_subcommand("simulate", "Trace-driven mesh simulation");
    sim->add_option("--trace", sim_o.trace, "Trace file")->required();
    sim->add_option("--partitioning", sim_o.partitioning, "partitioning.json")->required();
    sim->add_option("--mapping", sim_o.mapping, "mapping.json")->required();
    sim->add_option("--mesh", sim_o.mesh, "Mesh size WxH (default: from mapping.json)");
    sim->add_option("--edge-capacity", sim_o.edge_capacity,
            "Spikes per link per cycle (0 = unlimited)");
    sim->add_option("--injection-capacity", sim_o.injection_capacity,
            "Spikes injected per core per cycle (0 = unlimited)");
    sim->add_option("--hop-latency", sim_o.hop_latency, "Cycles per link traversal");
    sim->add_option("--cycles-per-timestep", sim_o.cycles_per_timestep,
            "Injection cycle = timestep * this");
    sim->add_option("--congestion", sim_o.congestion, "recount or once");
    sim->add_option("--e-link", sim_o.e_link, "Energy per link traversal");
    sim->add_option("--e-router", sim_o.e_router, "Energy per router traversal");
    sim->add_option("--out", sim_o.out, "Output metrics.json")->required();
    sim->callback([&] { run_simulate(sim_o); });

    PipelineOpts pipe_o;
    CLI::App *pipe = app.add_subcommand("pipeline", "Workload -> partition -> map -> simulate");
    pipe->add_option("--config", pipe_o.config, "key = value config file");
    pipe->add_option("--set", pipe_o.sets, "Override: --set key=value (repeatable)");
    pipe->add_option("--out-dir", pipe_o.out_dir, "Artifact directory");
    pipe->add_option("--seed", pipe_o.seed, "Master seed for stages without an explicit one");
    pipe->add_option("--baseline", pipe_o.baseline,
            "random-partition, sequential-mapping, or random-mapping");
    pipe->callback([&] { run_pipeline_cmd(pipe_o); });

    CompareOpts cmp_o;
    CLI::App *cmp = app.add_subcommand("compare", "Compare metrics.json files, first run = 1.0");
    cmp->add_option("files", cmp_o.metrics_files, "metrics.json files")
            ->required()
            ->expected(2, -1);
    cmp->add_option("--out-csv", cmp_o.out_csv, "Write normalized table as CSV");
    cmp->add_option("--out-json", cmp_o.out_json, "Write raw + normalized table as JSON");
    cmp->callback([&] { run_compare(cmp_o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    } catch (const StageError &e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
