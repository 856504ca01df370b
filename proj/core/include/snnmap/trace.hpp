#pragma once

#include <cstdint>
#include <vector>

#include "snnmap/types.hpp"

namespace snnmap {

// One spike delivery: src fired at `timestep` toward dst. Directed.
struct SpikeEvent {
    std::int64_t timestep = 0;
    NeuronId src = 0;
    NeuronId dst = 0;

    friend bool operator==(const SpikeEvent &, const SpikeEvent &) = default;
};

// Ordered spike trace; events non-decreasing in timestep.
struct SpikeTrace {
    std::vector<SpikeEvent> events;

    std::size_t length() const { return events.size(); }

    friend bool operator==(const SpikeTrace &, const SpikeTrace &) = default;
};

// Throws std::invalid_argument on self-events, ids outside [0, num_neurons)
// or decreasing timesteps.
void validate_trace(const SpikeTrace &trace, NeuronId num_neurons);

} // namespace snnmap
