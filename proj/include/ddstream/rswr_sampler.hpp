#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "ddstream/graph_stream.hpp"

namespace ddstream {

using Rng = std::mt19937_64;

/// One Bernoulli(1/n) trial. Consumes exactly one 64-bit engine draw; the
/// draw is mapped onto [0, n) by multiply-shift, so the bias is below n/2^64.
inline bool one_in(std::uint64_t n, Rng& rng) {
    __extension__ using u128 = unsigned __int128;
    auto x = static_cast<u128>(rng()) * n;
    return static_cast<std::uint64_t>(x >> 64) == 0;
}

/// Random sampling with replacement over a stream.
///
/// `current_degree` is the owner's in-degree after counting this edge. Each
/// slot is independently overwritten with `tail` with probability
/// 1/current_degree, so after d edges every slot holds a uniform draw from
/// the d tails seen so far, independently of the other slots. Exactly
/// slots.size() trials are drawn from `rng`.
///
/// Throws std::invalid_argument when current_degree is 0.
void observe(std::span<NodeId> slots, NodeId tail, std::uint64_t current_degree, Rng& rng);

}  // namespace ddstream
