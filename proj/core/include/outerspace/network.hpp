#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "outerspace/geometry.hpp"

namespace outerspace {

using NodeId = std::uint32_t;
inline constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();

/// Battery level treated as inexhaustible at experiment scale; used by the
/// harnesses whose preconditions say "no deaths during measurement".
inline constexpr std::int64_t kEffectivelyInfiniteBattery =
    std::numeric_limits<std::int64_t>::max() / 4;

struct Node {
    NodeId id = 0;
    SquarePoint pos;
    TorusPoint image;           // pos mapped through the node's fixed choice
    std::int64_t battery = 0;   // remaining transmissions; alive <=> battery > 0
    bool alive = false;
};

enum class DeployMode { Fixed, Poisson };

struct NetworkConfig {
    DeployMode mode = DeployMode::Fixed;
    std::uint32_t node_count = 1336;  // Fixed mode
    double density = 1336.0;          // Poisson mode: expected node count on S
    double range = 0.1;
    std::uint64_t seed = 0;
    std::int64_t initial_battery = 500;
};

/// Unit-disk network on the unit square: node positions, per-node batteries,
/// fixed torus images, and the adjacency structure (uv is an edge iff
/// square_distance <= range and u != v). Dead nodes stay in the node list
/// (their positions still matter) but leave the routable graph.
class Network {
public:
    /// Draws the node set from the config (Poisson or fixed count, positions
    /// i.i.d. uniform) and builds adjacency. Throws if the realized node
    /// count is < 2.
    static Network generate(const NetworkConfig& config);

    /// Builds a network over explicit positions; images are still derived
    /// from (seed, node id). Used by deserialization and hand-built tests.
    static Network from_positions(std::vector<SquarePoint> positions, double range,
                                  std::uint64_t seed, std::int64_t initial_battery);

    std::size_t size() const { return nodes_.size(); }
    const Node& node(NodeId u) const { return nodes_[u]; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const NetworkConfig& config() const { return config_; }
    double range() const { return config_.range; }
    std::uint64_t seed() const { return config_.seed; }

    bool alive(NodeId u) const { return nodes_[u].alive; }
    std::size_t alive_count() const { return alive_count_; }

    /// All neighbors of u (alive or not), ascending id.
    std::span<const NodeId> neighbors(NodeId u) const;

    /// Alive neighbors of u, ascending id. Throws on unknown id.
    std::vector<NodeId> alive_neighbors(NodeId u) const;

    /// Decrements u's battery by one transmission; marks it dead at zero.
    /// Transmitting from a dead node is a harness bug and throws.
    /// Returns the remaining battery.
    std::int64_t consume_transmission(NodeId u);

    /// Alive node minimizing square distance to p; ties broken by smallest
    /// id. Throws if no node is alive.
    NodeId nearest_node(const SquarePoint& p) const;

    /// Resets every battery (and the accounting baseline) to the given level.
    void set_all_batteries(std::int64_t battery);

    /// Transmissions recorded through consume_transmission since the last
    /// battery reset. Always equals battery_deficit().
    std::int64_t total_transmissions() const { return transmissions_; }

    /// Sum over nodes of (baseline battery - current battery).
    std::int64_t battery_deficit() const;

    /// The node whose battery hit zero first (kInvalidNode while all alive).
    NodeId first_dead_node() const { return first_dead_; }

    double mean_degree() const;

private:
    Network() = default;
    void build_adjacency();
    void check_id(NodeId u) const;

    std::vector<Node> nodes_;
    // CSR adjacency: neighbor ids of node u live in
    // adjacency_[offsets_[u] .. offsets_[u + 1]), ascending.
    std::vector<NodeId> adjacency_;
    std::vector<std::uint32_t> offsets_;
    NetworkConfig config_;
    std::int64_t battery_baseline_ = 0;
    std::int64_t transmissions_ = 0;
    std::size_t alive_count_ = 0;
    NodeId first_dead_ = kInvalidNode;
};

}  // namespace outerspace
