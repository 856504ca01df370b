#include <doctest.h>

#include <filesystem>
#include <string>
#include <unistd.h>

#include "snnmap/comm_matrix.hpp"
#include "snnmap/errors.hpp"
#include "snnmap/graph.hpp"
#include "snnmap/io.hpp"
#include "snnmap/mapping.hpp"
#include "snnmap/mesh.hpp"
#include "snnmap/partitioning.hpp"
#include "snnmap/trace.hpp"

using namespace snnmap;

namespace {

namespace fs = std::filesystem;

// Fresh temp dir per test binary run.
fs::path temp_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                ("snnmap_core_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string temp_file(const std::string &name) { return (temp_dir() / name).string(); }

} // namespace

TEST_CASE("graph normalizes, sorts and indexes edges") {
    SnnGraph g(4, {{2, 0, 5}, {1, 3, 2}, {0, 1, 1}});
    CHECK(g.num_neurons() == 4);
    CHECK(g.num_edges() == 3);
    // Stored u < v and sorted by (u, v).
    CHECK(g.edges()[0] == GraphEdge{0, 1, 1});
    CHECK(g.edges()[1] == GraphEdge{0, 2, 5});
    CHECK(g.edges()[2] == GraphEdge{1, 3, 2});
    CHECK(g.total_edge_weight() == 8);
    CHECK(g.total_vertex_weight() == 4);
    CHECK(g.degree_weight(0) == 6);
    CHECK(g.degree_weight(3) == 2);
    CHECK(g.neighbors(1).size() == 2);
}

TEST_CASE("graph rejects malformed input") {
    CHECK_THROWS_AS(SnnGraph(3, {{0, 0, 1}}), std::invalid_argument);        // self-loop
    CHECK_THROWS_AS(SnnGraph(3, {{0, 3, 1}}), std::invalid_argument);        // out of range
    CHECK_THROWS_AS(SnnGraph(3, {{0, 1, 0}}), std::invalid_argument);        // weight < 1
    CHECK_THROWS_AS(SnnGraph(3, {{0, 1, 1}, {1, 0, 2}}), std::invalid_argument); // duplicate
    CHECK_THROWS_AS(SnnGraph(2, {1, 1, 1}, {}), std::invalid_argument); // weight count mismatch
}

TEST_CASE("trace validation") {
    SpikeTrace t;
    t.events = {{0, 0, 1}, {0, 1, 0}, {3, 2, 0}};
    CHECK_NOTHROW(validate_trace(t, 3));
    CHECK_THROWS_AS(validate_trace(t, 2), std::invalid_argument); // id 2 out of range

    SpikeTrace decreasing;
    decreasing.events = {{5, 0, 1}, {4, 0, 1}};
    CHECK_THROWS_AS(validate_trace(decreasing, 2), std::invalid_argument);

    SpikeTrace self;
    self.events = {{0, 1, 1}};
    CHECK_THROWS_AS(validate_trace(self, 2), std::invalid_argument);
}

TEST_CASE("partitioning validation and cut") {
    SnnGraph g(4, {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}});
    Partitioning part{{0, 0, 1, 1}, 2, 2};
    CHECK_NOTHROW(validate_partitioning(part, g));
    CHECK(cut_weight(g, part) == 4);
    CHECK(partition_weights(part) == std::vector<Weight>{2, 2});

    Partitioning lopsided{{0, 0, 0, 1}, 2, 2};
    CHECK_THROWS_AS(validate_partitioning(lopsided, g), std::invalid_argument); // over capacity

    Partitioning bad_id{{0, 0, 2, 1}, 2, 4};
    CHECK_THROWS_AS(validate_partitioning(bad_id, g), std::invalid_argument);
}

TEST_CASE("comm matrix tallies directed partition traffic") {
    Partitioning part{{0, 0, 1, 1}, 2, 2};
    SpikeTrace t;
    t.events = {{0, 0, 1}, {0, 0, 2}, {1, 2, 0}, {1, 2, 3}, {2, 3, 0}};
    const CommMatrix c = comm_matrix(t, part);
    CHECK(c.at(0, 0) == 1);
    CHECK(c.at(0, 1) == 1);
    CHECK(c.at(1, 0) == 2);
    CHECK(c.at(1, 1) == 1);
    CHECK(c.total() == 5);
    CHECK(c.off_diagonal_total() == 3);

    SpikeTrace outside;
    outside.events = {{0, 0, 7}};
    CHECK_THROWS_AS(comm_matrix(outside, part), std::invalid_argument);
}

TEST_CASE("mesh geometry round trip") {
    const MeshTopology mesh{3, 2, 16, 8};
    CHECK(mesh.num_cores() == 6);
    for (int i = 0; i < mesh.num_cores(); ++i) {
        CHECK(mesh.core_index(mesh.coord_of(i)) == i);
    }
    CHECK(mesh.contains({2, 1}));
    CHECK_FALSE(mesh.contains({3, 0}));
    CHECK_FALSE(mesh.contains({0, -1}));
    CHECK_THROWS_AS((MeshTopology{0, 5}.validate()), std::invalid_argument);
}

TEST_CASE("mapping validation") {
    const MeshTopology mesh{2, 2, 4, 4};
    Mapping ok{{Coord{0, 0}, Coord{1, 1}}};
    CHECK_NOTHROW(validate_mapping(ok, mesh));

    Mapping shared{{Coord{0, 0}, Coord{0, 0}}};
    CHECK_THROWS_AS(validate_mapping(shared, mesh), std::invalid_argument);

    Mapping outside{{Coord{2, 0}}};
    CHECK_THROWS_AS(validate_mapping(outside, mesh), std::invalid_argument);
}

TEST_CASE("graph file round trip") {
    SnnGraph g(5, {{0, 4, 7}, {1, 2, 1}, {0, 1, 3}});
    const std::string path = temp_file("graph.txt");
    save_graph(g, path);
    CHECK(load_graph(path) == g);
}

TEST_CASE("graph parser reports line numbers") {
    const std::string path = temp_file("bad_graph.txt");
    write_text_file(path, "# comment\nneurons 3\n0 1 2\n1 1 9\n");
    try {
        load_graph(path);
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.line() == 4);
        CHECK(std::string(e.what()).find(path) != std::string::npos);
    }
    write_text_file(path, "neurons 3\n0 1\n");
    CHECK_THROWS_AS(load_graph(path), ParseError);
    write_text_file(path, "0 1 2\n");
    CHECK_THROWS_AS(load_graph(path), ParseError); // missing header
}

TEST_CASE("trace file round trip and bounds") {
    SpikeTrace t;
    t.events = {{0, 0, 1}, {0, 2, 1}, {5, 1, 2}};
    const std::string path = temp_file("trace.txt");
    save_trace(t, path);
    CHECK(load_trace(path) == t);
    CHECK(load_trace(path, 3) == t);
    CHECK_THROWS_AS(load_trace(path, 2), ParseError);

    write_text_file(path, "1 0 1\n0 1 0\n");
    CHECK_THROWS_AS(load_trace(path), ParseError); // decreasing timestep
    write_text_file(path, "0 1 1\n");
    CHECK_THROWS_AS(load_trace(path), ParseError); // self event
}

TEST_CASE("partitioning json round trip keeps provenance out of the data") {
    Partitioning part{{0, 1, 0, 1}, 2, 2};
    const Provenance prov{"partition", "deadbeef", {{"seed", "1"}}};
    const std::string path = temp_file("part.json");
    save_partitioning(part, path, &prov);
    CHECK(load_partitioning(path) == part);
    // Saving the same content twice is byte-identical.
    CHECK(partitioning_to_json(part, &prov) == partitioning_to_json(part, &prov));
}

TEST_CASE("partitioning json is validated on load") {
    const std::string path = temp_file("bad_part.json");
    write_text_file(path, R"({"assignment": [0, 5], "capacity": 4, "k": 2})" "\n");
    CHECK_THROWS_AS(load_partitioning(path), ParseError);
    write_text_file(path, R"({"assignment": [0, 1]})" "\n");
    CHECK_THROWS_AS(load_partitioning(path), ParseError);
}

TEST_CASE("mapping json round trip with mesh and H") {
    Mapping m{{Coord{0, 0}, Coord{2, 1}}};
    const MeshTopology mesh{3, 2, 8, 8};
    const double h = 1.25;
    const std::string path = temp_file("map.json");
    save_mapping(m, path, &mesh, &h);
    const LoadedMapping lm = load_mapping(path);
    CHECK(lm.mapping == m);
    REQUIRE(lm.mesh.has_value());
    CHECK(lm.mesh->width == 3);
    CHECK(lm.mesh->height == 2);

    // Embedded mesh must contain the cores.
    write_text_file(path, R"({"core_of": [[9, 9]], "mesh": {"height": 2, "width": 3}})" "\n");
    CHECK_THROWS_AS(load_mapping(path), std::invalid_argument);
}

TEST_CASE("metrics json round trip") {
    MetricsReport r;
    r.average_hop = 1.5;
    r.average_latency = 2.25;
    r.dynamic_energy = 100.0;
    r.congestion_count = 7;
    r.edge_variance = 0.125;
    r.spikes_injected = 42;
    r.spikes_delivered = 42;
    const std::vector<EdgeHistogramEntry> hist = {
            {{0, 0}, {1, 0}, 10}, {{1, 0}, {0, 0}, 3}};
    const Provenance prov{"simulate", "cafe", {{"trace_hash", "ab"}, {"mesh", "2x1"}}};
    const std::string path = temp_file("metrics.json");
    save_metrics(r, hist, prov, path);
    const LoadedMetrics lm = load_metrics(path);
    CHECK(lm.metrics == r);
    CHECK(lm.edge_histogram == hist);
    CHECK(lm.provenance == prov);
}

TEST_CASE("fnv1a64 hashes match the reference vectors") {
    // Standard FNV-1a test vectors.
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");

    const std::string path = temp_file("hash.bin");
    write_text_file(path, "foobar");
    CHECK(file_fnv1a64_hex(path) == "85944171f73967e8");
}
