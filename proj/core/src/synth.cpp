#include "snnmap/synth.hpp"

#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace snnmap {

ConnectivitySpec ConnectivitySpec::parse(const std::string &text) {
    if (text == "full") return full_spec();
    if (text.rfind("random:", 0) == 0) {
        const std::string num = text.substr(7);
        std::size_t used = 0;
        double p = 0.0;
        try {
            p = std::stod(num, &used);
        } catch (const std::exception &) {
            throw std::invalid_argument("bad connectivity '" + text + "'");
        }
        if (used != num.size() || !(p > 0.0) || p > 1.0) {
            throw std::invalid_argument("bad connectivity '" + text + "' (need 0 < p <= 1)");
        }
        return random_spec(p);
    }
    throw std::invalid_argument("bad connectivity '" + text + "' (expected full or random:<p>)");
}

std::string ConnectivitySpec::to_string() const {
    if (full) return "full";
    std::ostringstream os;
    os << "random:" << p;
    return os.str();
}

namespace {

void check_rate_steps(double rate, int timesteps) {
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("rate must be in [0, 1]");
    if (timesteps < 0) throw std::invalid_argument("timesteps must be >= 0");
}

// Runs the firing process over a fixed out-adjacency and aggregates the
// per-synapse counts into undirected edge weights.
SynthResult finish(NeuronId n, const std::vector<std::vector<NeuronId>> &out_adj,
        const std::vector<char> &can_fire, double rate, int timesteps, std::mt19937_64 &rng) {
    SpikeTrace trace;
    std::unordered_map<std::uint64_t, Weight> counts;
    std::bernoulli_distribution fire(rate);
    if (rate > 0.0) {
        for (int t = 0; t < timesteps; ++t) {
            for (NeuronId v = 0; v < n; ++v) {
                if (!can_fire[static_cast<std::size_t>(v)]) continue;
                if (!fire(rng)) continue;
                for (const NeuronId dst : out_adj[static_cast<std::size_t>(v)]) {
                    trace.events.push_back(SpikeEvent{t, v, dst});
                    NeuronId a = v, b = dst;
                    if (a > b) std::swap(a, b);
                    counts[(static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
                            static_cast<std::uint32_t>(b)] += 1;
                }
            }
        }
    }
    std::vector<GraphEdge> edges;
    edges.reserve(counts.size());
    for (const auto &[key, w] : counts) {
        edges.push_back(GraphEdge{static_cast<NeuronId>(key >> 32),
                static_cast<NeuronId>(key & 0xffffffffu), w});
    }
    return SynthResult{SnnGraph(n, std::move(edges)), std::move(trace)};
}

} // namespace

SynthResult gen_feedforward(const std::vector<int> &layers, ConnectivitySpec connect,
        double rate, int timesteps, std::uint64_t seed) {
    if (layers.empty()) throw std::invalid_argument("gen_feedforward: need at least one layer");
    for (const int sz : layers) {
        if (sz < 1) throw std::invalid_argument("gen_feedforward: layer sizes must be >= 1");
    }
    if (!connect.full && (!(connect.p > 0.0) || connect.p > 1.0)) {
        throw std::invalid_argument("gen_feedforward: connectivity p must be in (0, 1]");
    }
    check_rate_steps(rate, timesteps);

    std::vector<NeuronId> offset(layers.size() + 1, 0);
    for (std::size_t i = 0; i < layers.size(); ++i) {
        offset[i + 1] = offset[i] + layers[i];
    }
    const NeuronId n = offset.back();

    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep(connect.full ? 1.0 : connect.p);
    std::vector<std::vector<NeuronId>> out_adj(static_cast<std::size_t>(n));
    std::vector<char> can_fire(static_cast<std::size_t>(n), 0);
    for (std::size_t li = 0; li + 1 < layers.size(); ++li) {
        for (NeuronId s = offset[li]; s < offset[li + 1]; ++s) {
            can_fire[static_cast<std::size_t>(s)] = 1;
            for (NeuronId d = offset[li + 1]; d < offset[li + 2]; ++d) {
                if (connect.full || keep(rng)) {
                    out_adj[static_cast<std::size_t>(s)].push_back(d);
                }
            }
        }
    }
    return finish(n, out_adj, can_fire, rate, timesteps, rng);
}

SynthResult gen_random(int n, double p, double rate, int timesteps, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_random: n must be >= 1");
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("gen_random: p must be in (0, 1]");
    check_rate_steps(rate, timesteps);

    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep(p);
    std::vector<std::vector<NeuronId>> out_adj(static_cast<std::size_t>(n));
    std::vector<char> can_fire(static_cast<std::size_t>(n), 1);
    for (NeuronId i = 0; i < n; ++i) {
        for (NeuronId j = i + 1; j < n; ++j) {
            if (!keep(rng)) continue;
            out_adj[static_cast<std::size_t>(i)].push_back(j);
            out_adj[static_cast<std::size_t>(j)].push_back(i);
        }
    }
    return finish(n, out_adj, can_fire, rate, timesteps, rng);
}

} // namespace snnmap
