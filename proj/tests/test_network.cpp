#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "outerspace/io.hpp"
#include "outerspace/network.hpp"
#include "outerspace/routing.hpp"
#include "outerspace/traffic.hpp"

using namespace outerspace;

namespace {

Network line_network() {
    // A - B - C with r = 0.1; only consecutive pairs are adjacent.
    return Network::from_positions({{0.00, 0.50}, {0.08, 0.50}, {0.15, 0.50}}, 0.1, 7, 500);
}

bool same_networks(const Network& a, const Network& b) {
    if (a.size() != b.size()) return false;
    for (NodeId u = 0; u < a.size(); ++u) {
        if (!(a.node(u).pos == b.node(u).pos)) return false;
        if (!(a.node(u).image == b.node(u).image)) return false;
        if (a.node(u).battery != b.node(u).battery) return false;
        const auto na = a.neighbors(u);
        const auto nb = b.neighbors(u);
        if (!std::equal(na.begin(), na.end(), nb.begin(), nb.end())) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("generation is deterministic under (config, seed)") {
    NetworkConfig cfg;
    cfg.node_count = 400;
    cfg.seed = 12345;
    CHECK(same_networks(Network::generate(cfg), Network::generate(cfg)));

    NetworkConfig other = cfg;
    other.seed = 999;
    CHECK_FALSE(same_networks(Network::generate(cfg), Network::generate(other)));
}

TEST_CASE("mean degree at the default density") {
    // fixed N=1336, r=0.1: expected ~38 with edge effects, averaged over seeds
    double total = 0.0;
    constexpr int kSeeds = 20;
    for (int s = 0; s < kSeeds; ++s) {
        NetworkConfig cfg;
        cfg.node_count = 1336;
        cfg.seed = 1000 + s;
        total += Network::generate(cfg).mean_degree();
    }
    const double mean = total / kSeeds;
    CHECK(mean >= 30.0);
    CHECK(mean <= 45.0);
}

TEST_CASE("adjacency equals brute force recomputation") {
    Rng rng(2525);
    for (int i = 0; i < 10; ++i) {
        NetworkConfig cfg;
        cfg.node_count = static_cast<std::uint32_t>(2 + rng.next_below(199));
        cfg.range = 0.05 + rng.next_unit() * 0.2;
        cfg.seed = rng.next_u64();
        const Network net = Network::generate(cfg);
        for (NodeId u = 0; u < net.size(); ++u) {
            std::vector<NodeId> brute;
            for (NodeId v = 0; v < net.size(); ++v) {
                if (v != u && square_distance(net.node(u).pos, net.node(v).pos) <= cfg.range) {
                    brute.push_back(v);
                }
            }
            const auto fast = net.neighbors(u);
            REQUIRE(std::equal(fast.begin(), fast.end(), brute.begin(), brute.end()));
        }
    }
}

TEST_CASE("adjacency is symmetric") {
    NetworkConfig cfg;
    cfg.node_count = 300;
    cfg.seed = 99;
    const Network net = Network::generate(cfg);
    for (NodeId u = 0; u < net.size(); ++u) {
        for (NodeId v : net.neighbors(u)) {
            const auto back = net.neighbors(v);
            CHECK(std::find(back.begin(), back.end(), u) != back.end());
        }
    }
}

TEST_CASE("node images match the fair mapper") {
    NetworkConfig cfg;
    cfg.node_count = 100;
    cfg.seed = 4321;
    const Network net = Network::generate(cfg);
    const FairMapper mapper(cfg.seed);
    for (const Node& node : net.nodes()) {
        CHECK(node.image == map_point(node.pos, node_image_choice(mapper, node.id)));
    }
}

TEST_CASE("poisson mode draws the node count") {
    NetworkConfig cfg;
    cfg.mode = DeployMode::Poisson;
    cfg.density = 1000.0;
    cfg.seed = 31;
    const Network net = Network::generate(cfg);
    CHECK(net.size() > 850);   // ~4.7 sigma
    CHECK(net.size() < 1150);

    // tiny density: some seeds realize N < 2 and must throw, others succeed
    cfg.density = 2.0;
    int throws = 0, successes = 0;
    for (std::uint64_t s = 0; s < 40; ++s) {
        cfg.seed = s;
        try {
            successes += Network::generate(cfg).size() >= 2 ? 1 : 0;
        } catch (const std::runtime_error&) {
            ++throws;
        }
    }
    CHECK(throws > 0);
    CHECK(successes > 0);
}

TEST_CASE("alive_neighbors filters dead nodes in id order") {
    Network net = line_network();
    CHECK(net.alive_neighbors(1) == std::vector<NodeId>{0, 2});

    // exhaust node 2's battery
    while (net.alive(2)) net.consume_transmission(2);
    CHECK(net.alive_neighbors(1) == std::vector<NodeId>{0});
    CHECK_THROWS_AS((void)net.alive_neighbors(99), std::out_of_range);
}

TEST_CASE("isolated node has no neighbors") {
    const Network net =
        Network::from_positions({{0.0, 0.0}, {0.05, 0.0}, {0.9, 0.9}}, 0.1, 1, 500);
    CHECK(net.alive_neighbors(2).empty());
}

TEST_CASE("consume_transmission decrements and kills at zero") {
    Network net = Network::from_positions({{0.1, 0.1}, {0.15, 0.1}}, 0.1, 1, 5);
    CHECK(net.consume_transmission(0) == 4);

    Network one = Network::from_positions({{0.1, 0.1}, {0.15, 0.1}}, 0.1, 1, 1);
    CHECK(one.consume_transmission(0) == 0);
    CHECK_FALSE(one.alive(0));
    CHECK(one.alive_count() == 1);
    CHECK(one.first_dead_node() == 0);
    CHECK_THROWS_AS(one.consume_transmission(0), std::logic_error);
}

TEST_CASE("battery accounting matches transmissions") {
    NetworkConfig cfg;
    cfg.node_count = 400;
    cfg.seed = 5;
    cfg.initial_battery = 50;
    Network net = Network::generate(cfg);
    const auto pairs = generate_traffic(net, TrafficConfig{200, 9});
    std::uint64_t hops = 0;
    for (const auto& [src, dst] : pairs) {
        if (!net.alive(src)) continue;
        hops += route_geographic(net, make_geographic_message(net, src, dst)).hops();
    }
    CHECK(net.total_transmissions() == static_cast<std::int64_t>(hops));
    CHECK(net.battery_deficit() == net.total_transmissions());
}

TEST_CASE("nearest_node prefers distance then id") {
    const Network net = Network::from_positions(
        {{0.2, 0.2}, {0.8, 0.8}, {0.4, 0.5}, {0.6, 0.5}, {0.5, 0.9}}, 0.1, 1, 500);
    // exact position
    CHECK(net.nearest_node({0.8, 0.8}) == 1);
    // equidistant pair (ids 2 and 3 around x=0.5): smaller id wins
    CHECK(net.nearest_node({0.5, 0.5}) == 2);
    // brute-force scan agreement on a probe grid
    for (double x : {0.1, 0.3, 0.7, 0.95}) {
        for (double y : {0.05, 0.5, 0.85}) {
            NodeId best = kInvalidNode;
            double best_d = 0.0;
            for (NodeId v = 0; v < net.size(); ++v) {
                const double d = square_distance(net.node(v).pos, SquarePoint{x, y});
                if (best == kInvalidNode || d < best_d) {
                    best = v;
                    best_d = d;
                }
            }
            CHECK(net.nearest_node({x, y}) == best);
        }
    }
}

TEST_CASE("nearest_node requires an alive node") {
    Network net = Network::from_positions({{0.1, 0.1}, {0.15, 0.1}}, 0.1, 1, 1);
    net.consume_transmission(0);
    net.consume_transmission(1);
    CHECK_THROWS_AS((void)net.nearest_node({0.5, 0.5}), std::runtime_error);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS((void)Network::from_positions({{0.1, 0.1}}, 0.1, 1, 500),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)Network::from_positions({{0.1, 0.1}, {1.5, 0.1}}, 0.1, 1, 500),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)Network::from_positions({{0.1, 0.1}, {0.2, 0.1}}, -1.0, 1, 500),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)Network::from_positions({{0.1, 0.1}, {0.2, 0.1}}, 0.1, 1, 0),
                    std::invalid_argument);
}

TEST_CASE("json round trip rebuilds an identical network") {
    NetworkConfig cfg;
    cfg.node_count = 250;
    cfg.seed = 777;
    const Network net = Network::generate(cfg);
    const std::string doc = network_to_json(net);
    const Network back = network_from_json(doc, cfg.initial_battery);
    CHECK(same_networks(net, back));
    // serialization itself is deterministic
    CHECK(network_to_json(back) == doc);
}

TEST_CASE("json validation errors") {
    CHECK_THROWS_AS((void)network_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS((void)network_from_json("{}"), std::invalid_argument);
    CHECK_THROWS_AS(
        (void)network_from_json(
            R"({"side":2.0,"range":0.1,"seed":1,"nodes":[{"id":0,"x":0.1,"y":0.1},{"id":1,"x":0.2,"y":0.2}]})"),
        std::invalid_argument);
    // ids must be dense
    CHECK_THROWS_AS(
        (void)network_from_json(
            R"({"side":1.0,"range":0.1,"seed":1,"nodes":[{"id":0,"x":0.1,"y":0.1},{"id":5,"x":0.2,"y":0.2}]})"),
        std::invalid_argument);
    // malformed node entries surface as the same error family
    CHECK_THROWS_AS(
        (void)network_from_json(
            R"({"side":1.0,"range":0.1,"seed":1,"nodes":[{"id":0,"x":"oops","y":0.1},{"id":1,"x":0.2,"y":0.2}]})"),
        std::invalid_argument);
}

TEST_CASE("set_all_batteries resets accounting") {
    Network net = line_network();
    net.consume_transmission(0);
    net.set_all_batteries(kEffectivelyInfiniteBattery);
    CHECK(net.total_transmissions() == 0);
    CHECK(net.battery_deficit() == 0);
    CHECK(net.alive_count() == net.size());
    CHECK(net.first_dead_node() == kInvalidNode);
}
