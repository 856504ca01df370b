#include <doctest.h>

#include <map>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "snnmap/graph.hpp"
#include "snnmap/partitioner.hpp"
#include "snnmap/partitioning.hpp"
#include "testgen.hpp"

using namespace snnmap;
using namespace snnmap::testing;

namespace {

// Projects a coarse-level assignment down to level 0 without refining.
std::vector<PartId> project_to_finest(const std::vector<CoarseLevel> &levels,
        std::vector<PartId> coarse) {
    for (std::size_t li = levels.size(); li-- > 1;) {
        const auto &f2c = levels[li].fine_to_coarse;
        std::vector<PartId> finer(f2c.size());
        for (std::size_t v = 0; v < f2c.size(); ++v) {
            finer[v] = coarse[static_cast<std::size_t>(f2c[v])];
        }
        coarse = std::move(finer);
    }
    return coarse;
}

} // namespace

TEST_CASE("coarsening conserves vertex weight and preserves projected cuts") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        const SnnGraph g = random_graph(gen, 60, 0.15);
        const auto levels = coarsen(g, 12, /*seed=*/trial * 7 + 1);
        REQUIRE(!levels.empty());
        CHECK(levels[0].graph == g);
        CHECK(levels[0].fold_map.empty());

        for (std::size_t li = 1; li < levels.size(); ++li) {
            const SnnGraph &coarse = levels[li].graph;
            const SnnGraph &fine = levels[li - 1].graph;
            CHECK(coarse.total_vertex_weight() == fine.total_vertex_weight());
            CHECK(coarse.total_edge_weight() <= fine.total_edge_weight());
            // Every kept level shrank by at least 10%.
            CHECK(coarse.num_neurons() * 10 <= fine.num_neurons() * 9);
            // fold_map and fine_to_coarse agree, folds cover the fine level.
            REQUIRE(levels[li].fine_to_coarse.size() ==
                    static_cast<std::size_t>(fine.num_neurons()));
            NeuronId covered = 0;
            for (NeuronId c = 0; c < coarse.num_neurons(); ++c) {
                Weight w = 0;
                for (NeuronId f : levels[li].fold_map[static_cast<std::size_t>(c)]) {
                    CHECK(levels[li].fine_to_coarse[static_cast<std::size_t>(f)] == c);
                    w += fine.vertex_weight(f);
                    ++covered;
                }
                CHECK(coarse.vertex_weight(c) == w);
            }
            CHECK(covered == fine.num_neurons());
        }

        // Non-final levels are still above the stop size.
        for (std::size_t li = 0; li + 1 < levels.size(); ++li) {
            CHECK(levels[li].graph.num_neurons() > 12);
        }

        // A random coarse assignment projects with its cut intact.
        std::mt19937_64 prng(99);
        const auto coarse_part =
                random_partition_of(prng, levels.back().graph.num_neurons(), 3, 1 << 20);
        const Weight coarse_cut = brute_cut(levels.back().graph, coarse_part.assignment);
        const auto fine_assign = project_to_finest(levels, coarse_part.assignment);
        CHECK(brute_cut(g, fine_assign) == coarse_cut);
    }
}

TEST_CASE("coarsening honors the vertex weight cap") {
    std::mt19937_64 gen(5);
    const SnnGraph g = random_graph(gen, 80, 0.2);
    const auto levels = coarsen(g, 4, /*seed=*/9, /*max_vertex_weight=*/3);
    for (const auto &lvl : levels) {
        for (NeuronId v = 0; v < lvl.graph.num_neurons(); ++v) {
            CHECK(lvl.graph.vertex_weight(v) <= 3);
        }
    }
}

TEST_CASE("coarsening is deterministic and stops on an edgeless graph") {
    std::mt19937_64 gen(7);
    const SnnGraph g = random_graph(gen, 50, 0.1);
    const auto a = coarsen(g, 10, /*seed=*/42);
    const auto b = coarsen(g, 10, /*seed=*/42);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].graph == b[i].graph);
        CHECK(a[i].fine_to_coarse == b[i].fine_to_coarse);
    }

    const SnnGraph isolated(6, std::vector<GraphEdge>{});
    const auto lv = coarsen(isolated, 2, /*seed=*/1);
    CHECK(lv.size() == 1); // nothing to match, no progress possible
}

TEST_CASE("initial partition grows balanced regions") {
    // Path of four unit vertices, k = 2, capacity 2: both halves fill up.
    const SnnGraph path(4, {{0, 1, 5}, {1, 2, 1}, {2, 3, 5}});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Partitioning part = initial_partition(path, 2, 2, seed);
        validate_partitioning(part, path);
        CHECK(partition_weights(part, path) == std::vector<Weight>{2, 2});
    }
}

TEST_CASE("initial partition handles k=1 and tight capacity") {
    std::mt19937_64 gen(3);
    const SnnGraph g = random_graph(gen, 30, 0.2);

    const Partitioning whole = initial_partition(g, 1, 30, /*seed=*/1);
    CHECK(partition_weights(whole, g) == std::vector<Weight>{30});

    // Exactly n = k * capacity leaves no slack at all.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Partitioning tight = initial_partition(g, 5, 6, seed);
        validate_partitioning(tight, g);
        CHECK(partition_weights(tight, g) == std::vector<Weight>(5, 6));
    }
}

TEST_CASE("initial partition rejects infeasible capacity") {
    const SnnGraph g(5, {{0, 1, 1}});
    CHECK_THROWS_AS(initial_partition(g, 2, 2, /*seed=*/0), std::invalid_argument);
    // Weighted vertices can be unpackable even with aggregate slack.
    const SnnGraph heavy(2, {3, 3}, {{0, 1, 1}});
    CHECK_THROWS_AS(initial_partition(heavy, 3, 2, /*seed=*/0), std::invalid_argument);
}

TEST_CASE("refinement never worsens the cut and keeps its bookkeeping exact") {
    std::mt19937_64 gen(21);
    int observed_moves = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const NeuronId n = 8 + static_cast<NeuronId>(gen() % 57); // 8..64
        const PartId k = 2 + static_cast<PartId>(gen() % 3);      // 2..4
        const SnnGraph g = random_graph(gen, n, 0.25);
        const Weight capacity = (n + k - 1) / k + 2;
        Partitioning part = random_partition_of(gen, n, k, capacity);
        const Weight before = brute_cut(g, part.assignment);

        std::vector<PartId> work = part.assignment;
        const RefineObserver check_state = [&](const SnnGraph &lg, const RefinementState &st) {
            ++observed_moves;
            const RefinementState ref = recompute_state(lg, st.assignment, k);
            CHECK(st.internal_degree == ref.internal_degree);
            CHECK(st.external_degree == ref.external_degree);
            CHECK(st.partition_weights == ref.partition_weights);
            CHECK(st.cut == ref.cut);
        };
        const Weight after = refine_level(g, work, k, capacity, 8, check_state);

        CHECK(after <= before);
        CHECK(after == brute_cut(g, work));
        Partitioning refined{work, k, capacity};
        validate_partitioning(refined, g);
    }
    CHECK(observed_moves > 0); // the observer actually exercised the oracle
}

TEST_CASE("refinement validates its arguments") {
    const SnnGraph g(3, {{0, 1, 1}});
    std::vector<PartId> a{0, 1, 0};
    CHECK_THROWS_AS(refine_level(g, a, 2, 3, 0), std::invalid_argument);
    std::vector<PartId> wrong_size{0, 1};
    CHECK_THROWS_AS(refine_level(g, wrong_size, 2, 3, 5), std::invalid_argument);
}

TEST_CASE("uncoarsening projects and refines down to the input graph") {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 10; ++trial) {
        const SnnGraph g = random_graph(gen, 70, 0.12);
        // Slack matters: coarse vertices of weight <= 10 and capacity 30
        // keep the greedy growth feasible for every seed (the lightest
        // partition always has room for a stranded vertex).
        const Weight capacity = 30;
        const auto levels = coarsen(g, 16, /*seed=*/trial + 1, /*max_vertex_weight=*/10);
        const Partitioning init =
                initial_partition(levels.back().graph, 3, capacity, /*seed=*/trial);
        const Weight init_cut = brute_cut(levels.back().graph, init.assignment);

        const Partitioning out = uncoarsen_refine(levels, init, capacity, 10);
        REQUIRE(out.size() == static_cast<std::size_t>(g.num_neurons()));
        validate_partitioning(out, g);
        CHECK(cut_weight(g, out) <= init_cut);
    }
}

TEST_CASE("full pipeline produces valid deterministic partitionings") {
    std::mt19937_64 gen(41);
    const SnnGraph g = random_graph(gen, 90, 0.1);
    const Partitioning a = partition(g, 6, 20, /*seed=*/123);
    const Partitioning b = partition(g, 6, 20, /*seed=*/123);
    CHECK(a == b);
    validate_partitioning(a, g);

    const Partitioning other = partition(g, 6, 20, /*seed=*/124);
    validate_partitioning(other, g);
}

TEST_CASE("full pipeline puts a k=1 graph in one part and rejects impossible fits") {
    std::mt19937_64 gen(51);
    const SnnGraph g = random_graph(gen, 20, 0.3);
    const Partitioning one = partition(g, 1, 20, /*seed=*/5);
    CHECK(cut_weight(g, one) == 0);
    CHECK_THROWS_AS(partition(g, 3, 5, /*seed=*/5), std::invalid_argument);
}

TEST_CASE("full pipeline finds the bridge cut in a two-clique graph") {
    std::mt19937_64 gen(61);
    const SnnGraph g = bridged_cliques(gen, 8, 8);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Partitioning part = partition(g, 2, 8, seed);
        validate_partitioning(part, g);
        if (cut_weight(g, part) == 1) ++hits;
    }
    CHECK(hits >= 8); // the bridge is the unique feasible optimum
}

TEST_CASE("refinement matches the exhaustive optimum on tiny graphs") {
    std::mt19937_64 gen(71);
    int optimal = 0;
    const int trials = 30;
    for (int trial = 0; trial < trials; ++trial) {
        const SnnGraph g = random_graph(gen, 9, 0.35, 6);
        const Weight best = exhaustive_best_cut(g, 2, 5);
        REQUIRE(best >= 0);
        Weight found = -1;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Partitioning part = partition(g, 2, 5, seed);
            const Weight cut = cut_weight(g, part);
            CHECK(cut >= best); // the oracle is a true lower bound
            if (found < 0 || cut < found) found = cut;
        }
        if (found == best) ++optimal;
    }
    CHECK(optimal >= trials * 2 / 3); // heuristic, but it should rarely miss
}
