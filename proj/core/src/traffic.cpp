#include "outerspace/traffic.hpp"

#include <stdexcept>

namespace outerspace {

std::vector<TrafficPair> generate_traffic(std::size_t node_count, const TrafficConfig& cfg) {
    if (node_count < 2) {
        throw std::invalid_argument("traffic: at least 2 nodes required");
    }
    Rng rng(cfg.seed);
    std::vector<TrafficPair> pairs;
    pairs.reserve(cfg.message_count);
    const auto n = static_cast<std::uint64_t>(node_count);
    for (std::uint64_t i = 0; i < cfg.message_count; ++i) {
        const auto src = static_cast<NodeId>(rng.next_below(n));
        auto dst = static_cast<NodeId>(rng.next_below(n - 1));
        if (dst >= src) ++dst;  // uniform over ordered pairs, src != dst
        pairs.emplace_back(src, dst);
    }
    return pairs;
}

std::vector<TrafficPair> generate_traffic(const Network& net, const TrafficConfig& cfg) {
    return generate_traffic(net.size(), cfg);
}

Rng image_stream(const TrafficConfig& cfg) {
    return Rng(derive_seed(cfg.seed, 0x696d6167ULL));
}

std::uint64_t traffic_digest(std::span<const TrafficPair> pairs) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& [src, dst] : pairs) {
        mix(src);
        mix(dst);
    }
    return h;
}

}  // namespace outerspace
