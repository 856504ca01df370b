#include "snnmap/trace.hpp"

#include <stdexcept>
#include <string>

namespace snnmap {

void validate_trace(const SpikeTrace &trace, NeuronId num_neurons)
{
    std::int64_t prev_t = 0;
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        const SpikeEvent &e = trace.events[i];
        if (e.timestep < 0) {
            throw std::invalid_argument(
                    "trace: negative timestep at event " + std::to_string(i));
        }
        if (i > 0 && e.timestep < prev_t) {
            throw std::invalid_argument(
                    "trace: decreasing timestep at event " + std::to_string(i));
        }
        prev_t = e.timestep;
        if (e.src == e.dst) {
            throw std::invalid_argument(
                    "trace: self-event on neuron " + std::to_string(e.src));
        }
        if (e.src < 0 || e.src >= num_neurons || e.dst < 0 || e.dst >= num_neurons) {
            throw std::invalid_argument(
                    "trace: neuron id out of range at event " + std::to_string(i));
        }
    }
}

} // namespace snnmap
