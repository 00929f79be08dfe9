#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "outerspace/network.hpp"

namespace outerspace {

struct TrafficConfig {
    std::uint64_t message_count = 50000;
    std::uint64_t seed = 0;
};

using TrafficPair = std::pair<NodeId, NodeId>;

/// Uniform traffic: (source, destination) drawn uniformly over ordered node
/// pairs with source != destination, deterministic under the seed.
std::vector<TrafficPair> generate_traffic(std::size_t node_count, const TrafficConfig& cfg);
std::vector<TrafficPair> generate_traffic(const Network& net, const TrafficConfig& cfg);

/// FNV-1a digest of the pair stream. Both protocols of a comparison run must
/// see the same digest (fairness invariant).
std::uint64_t traffic_digest(std::span<const TrafficPair> pairs);

/// The per-message destination-image stream paired with a traffic stream.
/// Derived from the traffic seed (not shared with it), so geographic runs,
/// which never draw images, see the identical pair sequence.
Rng image_stream(const TrafficConfig& cfg);

}  // namespace outerspace
