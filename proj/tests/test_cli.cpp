// Drives the installed binary end to end through a shell; everything
// here talks to the CLI surface only.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "snnmap/io.hpp"

using namespace snnmap;

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                ("snnmap_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string &args) {
    const std::string out_path = (work_dir() / "stdout.txt").string();
    const std::string err_path = (work_dir() / "stderr.txt").string();
    const std::string cmd = std::string(SNNMAP_CLI_PATH) + " " + args + " > " + out_path +
            " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_text_file(out_path);
    r.err = read_text_file(err_path);
    return r;
}

std::string q(const fs::path &p) { return "\"" + p.string() + "\""; }

} // namespace

TEST_CASE("synth, partition, map, eval-hop and simulate chain together") {
    const fs::path d = work_dir() / "chain";
    fs::create_directories(d);
    const fs::path graph = d / "graph.txt";
    const fs::path trace = d / "trace.txt";
    const fs::path part = d / "partitioning.json";
    const fs::path map = d / "mapping.json";
    const fs::path metrics = d / "metrics.json";

    RunResult r = run_cli("synth feedforward --layers 20,20 --rate 0.25 --steps 30 --seed 4"
                          " --out-graph " +
            q(graph) + " --out-trace " + q(trace));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("neurons 40") != std::string::npos);
    REQUIRE(fs::exists(graph));
    REQUIRE(fs::exists(trace));

    r = run_cli("partition --graph " + q(graph) + " --k 5 --capacity 8 --seed 2 --out " +
            q(part));
    CHECK(r.exit_code == 0);
    REQUIRE(fs::exists(part));

    r = run_cli("map --trace " + q(trace) + " --partitioning " + q(part) +
            " --mesh 3x2 --alg tabu --budget 2000it --seed 3 --out " + q(map));
    CHECK(r.exit_code == 0);
    REQUIRE(fs::exists(map));

    r = run_cli("eval-hop --trace " + q(trace) + " --partitioning " + q(part) +
            " --mapping " + q(map));
    CHECK(r.exit_code == 0);
    const double h_eval = std::stod(r.out);

    r = run_cli("simulate --trace " + q(trace) + " --partitioning " + q(part) +
            " --mapping " + q(map) + " --edge-capacity 0 --injection-capacity 0 --out " +
            q(metrics));
    CHECK(r.exit_code == 0);
    const LoadedMetrics lm = load_metrics(metrics.string());
    // The analytic hop average and the simulated one are the same number.
    CHECK(lm.metrics.average_hop == doctest::Approx(h_eval).epsilon(1e-12));
    CHECK(lm.metrics.congestion_count == 0);
    CHECK(lm.provenance.stage == "simulate");

    // Identical invocations rewrite identical bytes.
    const std::string part_bytes = read_text_file(part.string());
    const std::string map_bytes = read_text_file(map.string());
    run_cli("partition --graph " + q(graph) + " --k 5 --capacity 8 --seed 2 --out " + q(part));
    run_cli("map --trace " + q(trace) + " --partitioning " + q(part) +
            " --mesh 3x2 --alg tabu --budget 2000it --seed 3 --out " + q(map));
    CHECK(read_text_file(part.string()) == part_bytes);
    CHECK(read_text_file(map.string()) == map_bytes);
}

TEST_CASE("pipeline and compare subcommands") {
    const fs::path d = work_dir() / "pipe";
    const fs::path run_a = d / "tuned";
    const fs::path run_b = d / "naive";
    fs::create_directories(d);

    const std::string common = "pipeline --set workload.kind=feedforward"
                               " --set synth.layers=24,24 --set synth.rate=0.2"
                               " --set synth.steps=40 --set mesh=3x3"
                               " --set mesh.core_capacity=8 --set map.budget=1200it"
                               " --seed 6";
    RunResult r = run_cli(common + " --out-dir " + q(run_a));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("cut ") != std::string::npos);
    for (const char *name : {"graph.txt", "trace.txt", "partitioning.json", "mapping.json",
                 "convergence.csv", "metrics.json"}) {
        CHECK(fs::exists(run_a / name));
    }

    r = run_cli(common + " --baseline random-mapping --out-dir " + q(run_b));
    CHECK(r.exit_code == 0);

    const fs::path csv = d / "compare.csv";
    const fs::path json = d / "compare.json";
    r = run_cli("compare " + q(run_a / "metrics.json") + " " + q(run_b / "metrics.json") +
            " --out-csv " + q(csv) + " --out-json " + q(json));
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("run,average_hop", 0) == 0);
    // Labels come from the run directories; the first run is the 1.0 row.
    CHECK(r.out.find("\ntuned,1,1,1,1,1\n") != std::string::npos);
    CHECK(r.out.find("\nnaive,") != std::string::npos);
    CHECK(fs::exists(csv));
    CHECK(fs::exists(json));
    CHECK(read_text_file(json.string()).find("\"normalized\"") != std::string::npos);
}

TEST_CASE("failures name the stage and exit nonzero") {
    const fs::path d = work_dir() / "errs";
    fs::create_directories(d);

    RunResult r = run_cli("partition --graph /nonexistent/g.txt --k 2 --out " +
            q(d / "p.json"));
    CHECK(r.exit_code != 0);
    CHECK(r.err.find("[partition]") != std::string::npos);

    r = run_cli("pipeline --set workload.kind=feedforward --set bogus.key=1 --out-dir " +
            q(d / "out"));
    CHECK(r.exit_code != 0);
    CHECK(r.err.find("[config]") != std::string::npos);
    CHECK(r.err.find("bogus.key") != std::string::npos);

    r = run_cli("compare");
    CHECK(r.exit_code != 0); // at least two files required

    r = run_cli("no-such-command");
    CHECK(r.exit_code != 0);

    r = run_cli("");
    CHECK(r.exit_code != 0); // a subcommand is required
}
