#pragma once

#include <optional>
#include <vector>

#include "outerspace/network.hpp"

namespace outerspace {

enum class Protocol { Geographic, OuterSpace };

const char* protocol_name(Protocol p);

/// A position-addressed message. dest_image is present only for outer-space
/// routing: it is the destination position mapped through a per-message
/// random reflection choice and travels with the message, so every relay
/// agrees on the destination's torus image.
struct Message {
    NodeId source = kInvalidNode;
    NodeId dest = kInvalidNode;
    SquarePoint dest_pos;
    std::optional<TorusPoint> dest_image;
};

enum class RouteStatus { Delivered, DeadEnd };

struct RouteOutcome {
    std::vector<NodeId> path;  // first element is the source
    RouteStatus status = RouteStatus::DeadEnd;

    std::size_t hops() const { return path.size() - 1; }
    bool delivered() const { return status == RouteStatus::Delivered; }
};

struct RouteRequest {
    Protocol protocol = Protocol::Geographic;
    Message message;
};

Message make_geographic_message(const Network& net, NodeId src, NodeId dst);

/// Outer-space message with dest_image drawn fresh from the caller's stream
/// (each of the four destination images equally probable).
Message make_outer_space_message(const Network& net, NodeId src, NodeId dst, Rng& rng);

/// Outer-space message with an explicit destination-image choice.
Message make_outer_space_message(const Network& net, NodeId src, NodeId dst,
                                 const ImageChoice& dest_choice);

/// Greedy geographic routing: each relay forwards to the alive neighbor
/// strictly closest to dest_pos (ties to the smallest id), pays one battery
/// unit per transmission, and stops at the destination node (Delivered) or
/// when no neighbor strictly improves (DeadEnd).
RouteOutcome route_geographic(Network& net, const Message& msg);

/// Same greedy loop run in torus coordinates: the minimized quantity is the
/// torus distance between a candidate's image and the message's destination
/// image. Relay candidates are still the physical alive neighbors on the
/// square; transmission is physical. The destination node itself is
/// evaluated at the carried destination image (distance zero), which is how
/// relays agree on the destination despite independent fixed images.
RouteOutcome route_outer_space(Network& net, const Message& msg);

RouteOutcome route(Network& net, const RouteRequest& request);

/// The per-hop distance-to-target sequence a route minimized, recomputed
/// from the path: square distance to dest_pos for geographic routing, torus
/// distance from the walk's lifted position to the destination image for
/// outer-space routing. Strictly decreasing for any route the greedy loops
/// produce.
std::vector<double> route_metric_trace(const Network& net, const Message& msg,
                                       Protocol protocol, const RouteOutcome& outcome);

enum class PathWeight { Hops, Euclidean };

struct OraclePath {
    bool reachable = false;
    std::vector<NodeId> path;  // src first, dst last when reachable
    double cost = 0.0;         // hop count or summed edge length

    std::size_t hops() const { return path.empty() ? 0 : path.size() - 1; }
};

/// Exact shortest path over the unit-disk graph restricted to alive nodes
/// (uniform-cost search, deterministic tie-breaking by node id). Validation
/// oracle; independent of the greedy routines.
OraclePath oracle_shortest_path(const Network& net, NodeId src, NodeId dst, PathWeight weight);

/// Single-source variant of the oracle: parent[v] on a shortest path tree,
/// kInvalidNode for unreached nodes (and for src itself).
struct OracleTree {
    NodeId source = kInvalidNode;
    std::vector<NodeId> parent;
    std::vector<double> cost;
    std::vector<bool> reached;
};

OracleTree oracle_shortest_tree(const Network& net, NodeId src, PathWeight weight);

/// Extracts the src -> dst path from a tree produced by oracle_shortest_tree.
OraclePath oracle_tree_path(const OracleTree& tree, NodeId dst);

}  // namespace outerspace
