#include "outerspace/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace outerspace {

namespace {

constexpr std::uint64_t kPlacementDomain = 0x706c6163ULL;  // placement stream tag

std::uint32_t grid_cell(double coord, std::uint32_t cells) {
    auto c = static_cast<std::int64_t>(coord * cells);
    if (c < 0) c = 0;
    if (c >= static_cast<std::int64_t>(cells)) c = cells - 1;
    return static_cast<std::uint32_t>(c);
}

}  // namespace

Network Network::generate(const NetworkConfig& config) {
    if (!(config.range > 0.0)) {
        throw std::invalid_argument("network: range must be > 0");
    }
    if (config.initial_battery <= 0) {
        throw std::invalid_argument("network: initial_battery must be positive");
    }

    Rng rng(derive_seed(config.seed, kPlacementDomain));
    std::uint64_t n = 0;
    switch (config.mode) {
        case DeployMode::Fixed:
            n = config.node_count;
            break;
        case DeployMode::Poisson:
            n = poisson_sample(rng, config.density);
            break;
    }
    if (n < 2) {
        throw std::runtime_error("network: realized node count " + std::to_string(n) +
                                 " is below the minimum of 2");
    }

    std::vector<SquarePoint> positions;
    positions.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        positions.push_back(random_square_point(rng));
    }

    Network net = from_positions(std::move(positions), config.range, config.seed,
                                 config.initial_battery);
    net.config_ = config;
    net.config_.node_count = static_cast<std::uint32_t>(n);
    return net;
}

Network Network::from_positions(std::vector<SquarePoint> positions, double range,
                                std::uint64_t seed, std::int64_t initial_battery) {
    if (positions.size() < 2) {
        throw std::invalid_argument("network: at least 2 nodes required");
    }
    if (!(range > 0.0)) {
        throw std::invalid_argument("network: range must be > 0");
    }
    if (initial_battery <= 0) {
        throw std::invalid_argument("network: initial_battery must be positive");
    }
    for (const SquarePoint& p : positions) {
        if (!(p.x >= 0.0 && p.x <= kSquareSide && p.y >= 0.0 && p.y <= kSquareSide)) {
            throw std::invalid_argument("network: position outside the unit square");
        }
    }

    Network net;
    net.config_.mode = DeployMode::Fixed;
    net.config_.node_count = static_cast<std::uint32_t>(positions.size());
    net.config_.density = static_cast<double>(positions.size());
    net.config_.range = range;
    net.config_.seed = seed;
    net.config_.initial_battery = initial_battery;

    const FairMapper mapper(seed);
    const auto count = static_cast<NodeId>(positions.size());
    net.nodes_.resize(positions.size());
    for (NodeId id = 0; id < count; ++id) {
        Node& node = net.nodes_[id];
        node.id = id;
        node.pos = positions[id];
        node.image = map_point(node.pos, node_image_choice(mapper, id));
        node.battery = initial_battery;
        node.alive = true;
    }
    net.battery_baseline_ = initial_battery;
    net.alive_count_ = net.nodes_.size();
    net.build_adjacency();
    return net;
}

void Network::build_adjacency() {
    const double r = config_.range;
    const auto n = static_cast<std::uint32_t>(nodes_.size());

    // Uniform grid with cell width >= r: candidate neighbors of a node all
    // lie in the 3x3 cell block around it. Output must match the O(N^2)
    // recomputation exactly, so membership is decided by the same
    // square_distance(u, v) <= r comparison.
    const auto cells = static_cast<std::uint32_t>(
        std::max(1.0, std::floor(kSquareSide / std::min(r, kSquareSide))));
    std::vector<std::vector<NodeId>> buckets(static_cast<std::size_t>(cells) * cells);
    for (NodeId id = 0; id < n; ++id) {
        const auto cx = grid_cell(nodes_[id].pos.x, cells);
        const auto cy = grid_cell(nodes_[id].pos.y, cells);
        buckets[static_cast<std::size_t>(cy) * cells + cx].push_back(id);
    }

    offsets_.assign(n + 1, 0);
    adjacency_.clear();
    std::vector<NodeId> found;
    for (NodeId u = 0; u < n; ++u) {
        found.clear();
        const auto cx = static_cast<std::int64_t>(grid_cell(nodes_[u].pos.x, cells));
        const auto cy = static_cast<std::int64_t>(grid_cell(nodes_[u].pos.y, cells));
        for (std::int64_t gy = cy - 1; gy <= cy + 1; ++gy) {
            if (gy < 0 || gy >= static_cast<std::int64_t>(cells)) continue;
            for (std::int64_t gx = cx - 1; gx <= cx + 1; ++gx) {
                if (gx < 0 || gx >= static_cast<std::int64_t>(cells)) continue;
                for (NodeId v : buckets[static_cast<std::size_t>(gy) * cells + gx]) {
                    if (v == u) continue;
                    if (square_distance(nodes_[u].pos, nodes_[v].pos) <= r) {
                        found.push_back(v);
                    }
                }
            }
        }
        std::sort(found.begin(), found.end());
        adjacency_.insert(adjacency_.end(), found.begin(), found.end());
        offsets_[u + 1] = static_cast<std::uint32_t>(adjacency_.size());
    }
}

void Network::check_id(NodeId u) const {
    if (u >= nodes_.size()) {
        throw std::out_of_range("network: unknown node id " + std::to_string(u));
    }
}

std::span<const NodeId> Network::neighbors(NodeId u) const {
    check_id(u);
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
}

std::vector<NodeId> Network::alive_neighbors(NodeId u) const {
    check_id(u);
    std::vector<NodeId> out;
    for (NodeId v : neighbors(u)) {
        if (nodes_[v].alive) out.push_back(v);
    }
    return out;
}

std::int64_t Network::consume_transmission(NodeId u) {
    check_id(u);
    Node& node = nodes_[u];
    if (!node.alive) {
        throw std::logic_error("network: transmission from dead node " + std::to_string(u));
    }
    --node.battery;
    ++transmissions_;
    if (node.battery == 0) {
        node.alive = false;
        --alive_count_;
        if (first_dead_ == kInvalidNode) first_dead_ = u;
    }
    return node.battery;
}

NodeId Network::nearest_node(const SquarePoint& p) const {
    NodeId best = kInvalidNode;
    double best_d = 0.0;
    for (const Node& node : nodes_) {
        if (!node.alive) continue;
        const double d = square_distance(node.pos, p);
        if (best == kInvalidNode || d < best_d) {
            best = node.id;
            best_d = d;
        }
    }
    if (best == kInvalidNode) {
        throw std::runtime_error("network: no alive node");
    }
    return best;
}

void Network::set_all_batteries(std::int64_t battery) {
    if (battery <= 0) {
        throw std::invalid_argument("network: battery must be positive");
    }
    for (Node& node : nodes_) {
        node.battery = battery;
        node.alive = true;
    }
    battery_baseline_ = battery;
    transmissions_ = 0;
    alive_count_ = nodes_.size();
    first_dead_ = kInvalidNode;
}

std::int64_t Network::battery_deficit() const {
    std::int64_t deficit = 0;
    for (const Node& node : nodes_) {
        deficit += battery_baseline_ - node.battery;
    }
    return deficit;
}

double Network::mean_degree() const {
    return nodes_.empty() ? 0.0
                          : static_cast<double>(adjacency_.size()) /
                                static_cast<double>(nodes_.size());
}

}  // namespace outerspace
