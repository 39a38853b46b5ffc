#include "ddstream/rswr_sampler.hpp"

#include <stdexcept>

namespace ddstream {

void observe(std::span<NodeId> slots, NodeId tail, std::uint64_t current_degree, Rng& rng) {
    if (current_degree == 0) {
        throw std::invalid_argument("observe: degree must be incremented before sampling");
    }
    for (auto& slot : slots) {
        if (one_in(current_degree, rng)) slot = tail;
    }
}

}  // namespace ddstream
