#include "outerspace/routing.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace outerspace {

const char* protocol_name(Protocol p) {
    return p == Protocol::Geographic ? "geographic" : "outer-space";
}

namespace {

void check_endpoints(const Network& net, NodeId src, NodeId dst) {
    if (src >= net.size() || dst >= net.size()) {
        throw std::out_of_range("routing: unknown endpoint id");
    }
    if (src == dst) {
        throw std::invalid_argument("routing: source equals destination");
    }
}

}  // namespace

Message make_geographic_message(const Network& net, NodeId src, NodeId dst) {
    check_endpoints(net, src, dst);
    return Message{src, dst, net.node(dst).pos, std::nullopt};
}

Message make_outer_space_message(const Network& net, NodeId src, NodeId dst, Rng& rng) {
    return make_outer_space_message(net, src, dst, random_image_choice(rng));
}

Message make_outer_space_message(const Network& net, NodeId src, NodeId dst,
                                 const ImageChoice& dest_choice) {
    check_endpoints(net, src, dst);
    const SquarePoint dest_pos = net.node(dst).pos;
    return Message{src, dst, dest_pos, map_point(dest_pos, dest_choice)};
}

RouteOutcome route_geographic(Network& net, const Message& msg) {
    if (msg.source >= net.size() || msg.dest >= net.size()) {
        throw std::out_of_range("routing: unknown endpoint id");
    }
    if (!net.alive(msg.source)) {
        throw std::logic_error("routing: source node " + std::to_string(msg.source) +
                               " is dead");
    }
    const SquarePoint target = msg.dest_pos;

    // Forward to the alive neighbor strictly closest to the destination
    // position; the distance sequence strictly decreases, so no node repeats
    // and the loop terminates in < N hops.
    RouteOutcome outcome;
    outcome.path.push_back(msg.source);
    NodeId cur = msg.source;
    double cur_key = square_distance(net.node(cur).pos, target);
    while (cur != msg.dest) {
        NodeId best = kInvalidNode;
        double best_key = cur_key;
        for (NodeId v : net.neighbors(cur)) {  // ascending id: ties keep the smallest
            if (!net.alive(v)) continue;
            const double k = square_distance(net.node(v).pos, target);
            if (k < best_key) {
                best_key = k;
                best = v;
            }
        }
        if (best == kInvalidNode) {
            outcome.status = RouteStatus::DeadEnd;
            return outcome;
        }
        net.consume_transmission(cur);  // sender pays, including the source
        cur = best;
        cur_key = best_key;
        outcome.path.push_back(cur);
    }
    outcome.status = RouteStatus::Delivered;
    return outcome;
}

namespace {

struct Lift {
    TorusPoint point;
    double target_distance = std::numeric_limits<double>::infinity();
};

// Best valid lift of position p for a walk currently at torus point m: among
// p's images within torus range of m (the chart-coherent continuations;
// the same-chart image is always in range, so the set is never empty for a
// physical neighbor), the one closest to the target. Ties keep the smallest
// choice index.
Lift best_valid_lift(const SquarePoint& p, const TorusPoint& m, const TorusPoint& target,
                     double range) {
    Lift best;
    for (int c = 0; c < kImageChoiceCount; ++c) {
        const TorusPoint image = map_point(p, ImageChoice::from_index(c));
        if (torus_distance(image, m) > range) continue;
        const double d = torus_distance(image, target);
        if (d < best.target_distance) {
            best = Lift{image, d};
        }
    }
    return best;
}

}  // namespace

RouteOutcome route_outer_space(Network& net, const Message& msg) {
    if (!msg.dest_image.has_value()) {
        throw std::invalid_argument("routing: outer-space message without dest_image");
    }
    if (msg.source >= net.size() || msg.dest >= net.size()) {
        throw std::out_of_range("routing: unknown endpoint id");
    }
    if (!net.alive(msg.source)) {
        throw std::logic_error("routing: source node " + std::to_string(msg.source) +
                               " is dead");
    }
    const TorusPoint target = *msg.dest_image;
    const double range = net.range();

    // Greedy descent of the torus distance to the destination image. The
    // message tracks its lifted position m on the torus, starting at the
    // source's fixed image. Relay candidates are the physical alive
    // neighbors; each is evaluated at its best image within torus range of
    // m, so the walk stays chart-coherent yet crosses reflection lines where
    // the torus geodesic does. Mapped back to the square, the route is the
    // reflected (billiard) image of the torus route. Agreement on the
    // destination is automatic: the carried destination image is an image of
    // the destination's position, so once m comes within range of it the
    // destination's lift is the target itself, at distance zero.
    RouteOutcome outcome;
    outcome.path.push_back(msg.source);
    NodeId cur = msg.source;
    TorusPoint m = net.node(cur).image;
    double cur_key = torus_distance(m, target);
    while (cur != msg.dest) {
        NodeId best = kInvalidNode;
        TorusPoint best_lift{};
        double best_key = cur_key;
        for (NodeId v : net.neighbors(cur)) {  // ascending id: ties keep the smallest
            if (!net.alive(v)) continue;
            // Unlike the square metric, the lifted metric is not a function
            // of the node alone: where the walk hugs a torus seam, a node's
            // other image can re-enter with a smaller distance. Nodes
            // already on the path are excluded, which keeps loop freedom
            // structural.
            if (std::find(outcome.path.begin(), outcome.path.end(), v) != outcome.path.end()) {
                continue;
            }
            const Lift lift = best_valid_lift(net.node(v).pos, m, target, range);
            if (lift.target_distance < best_key) {
                best_key = lift.target_distance;
                best = v;
                best_lift = lift.point;
            }
        }
        if (best == kInvalidNode) {
            outcome.status = RouteStatus::DeadEnd;
            return outcome;
        }
        net.consume_transmission(cur);  // sender pays, including the source
        cur = best;
        m = best_lift;
        cur_key = best_key;
        outcome.path.push_back(cur);
    }
    outcome.status = RouteStatus::Delivered;
    return outcome;
}

RouteOutcome route(Network& net, const RouteRequest& request) {
    return request.protocol == Protocol::Geographic ? route_geographic(net, request.message)
                                                    : route_outer_space(net, request.message);
}

std::vector<double> route_metric_trace(const Network& net, const Message& msg,
                                       Protocol protocol, const RouteOutcome& outcome) {
    std::vector<double> trace;
    trace.reserve(outcome.path.size());
    if (protocol == Protocol::Geographic) {
        for (NodeId v : outcome.path) {
            trace.push_back(square_distance(net.node(v).pos, msg.dest_pos));
        }
        return trace;
    }
    if (!msg.dest_image.has_value()) {
        throw std::invalid_argument("routing: outer-space trace without dest_image");
    }
    TorusPoint m = net.node(outcome.path.front()).image;
    trace.push_back(torus_distance(m, *msg.dest_image));
    for (std::size_t i = 1; i < outcome.path.size(); ++i) {
        const Lift lift =
            best_valid_lift(net.node(outcome.path[i]).pos, m, *msg.dest_image, net.range());
        m = lift.point;
        trace.push_back(lift.target_distance);
    }
    return trace;
}

OracleTree oracle_shortest_tree(const Network& net, NodeId src, PathWeight weight) {
    if (src >= net.size()) {
        throw std::out_of_range("oracle: unknown source id");
    }
    const auto n = net.size();
    OracleTree tree;
    tree.source = src;
    tree.parent.assign(n, kInvalidNode);
    tree.cost.assign(n, 0.0);
    tree.reached.assign(n, false);
    if (!net.alive(src)) {
        return tree;  // nothing reachable from a dead node
    }

    if (weight == PathWeight::Hops) {
        // BFS; neighbor scan in ascending id gives the id tie-break for free.
        std::vector<NodeId> queue;
        queue.push_back(src);
        tree.reached[src] = true;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const NodeId u = queue[head];
            for (NodeId v : net.neighbors(u)) {
                if (!net.alive(v) || tree.reached[v]) continue;
                tree.reached[v] = true;
                tree.parent[v] = u;
                tree.cost[v] = tree.cost[u] + 1.0;
                queue.push_back(v);
            }
        }
        return tree;
    }

    // Dijkstra with lazy deletion; ties popped by smallest id, relaxations
    // strict, so the tree is deterministic.
    using Entry = std::pair<double, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    dist[src] = 0.0;
    frontier.emplace(0.0, src);
    while (!frontier.empty()) {
        const auto [d, u] = frontier.top();
        frontier.pop();
        if (d > dist[u] || tree.reached[u]) continue;
        tree.reached[u] = true;
        tree.cost[u] = d;
        for (NodeId v : net.neighbors(u)) {
            if (!net.alive(v) || tree.reached[v]) continue;
            const double nd = d + square_distance(net.node(u).pos, net.node(v).pos);
            if (nd < dist[v]) {
                dist[v] = nd;
                tree.parent[v] = u;
                frontier.emplace(nd, v);
            }
        }
    }
    return tree;
}

OraclePath oracle_tree_path(const OracleTree& tree, NodeId dst) {
    OraclePath out;
    if (dst >= tree.reached.size() || !tree.reached[dst]) {
        return out;
    }
    out.reachable = true;
    out.cost = tree.cost[dst];
    for (NodeId v = dst; v != kInvalidNode; v = tree.parent[v]) {
        out.path.push_back(v);
    }
    std::reverse(out.path.begin(), out.path.end());
    return out;
}

OraclePath oracle_shortest_path(const Network& net, NodeId src, NodeId dst, PathWeight weight) {
    if (dst >= net.size()) {
        throw std::out_of_range("oracle: unknown destination id");
    }
    return oracle_tree_path(oracle_shortest_tree(net, src, weight), dst);
}

}  // namespace outerspace
