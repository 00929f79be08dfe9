#include "outerspace/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace outerspace {

namespace {

// Routes one traffic pair. A message whose source is already dead is an
// automatic failure: nothing is transmitted and the outcome has an empty
// path. The destination image draw happens unconditionally so the image
// stream position does not depend on the death pattern.
struct RoutedMessage {
    RouteOutcome outcome;
    bool routed = false;
};

RoutedMessage route_pair(Network& net, const TrafficPair& pair, Protocol protocol,
                         Rng& image_rng) {
    const Message msg = protocol == Protocol::Geographic
                            ? make_geographic_message(net, pair.first, pair.second)
                            : make_outer_space_message(net, pair.first, pair.second, image_rng);
    if (!net.alive(pair.first)) {
        return {};
    }
    return {route(net, RouteRequest{protocol, msg}), true};
}

int heat_cell(double coord, int grid) {
    auto c = static_cast<int>(coord * grid);
    return std::clamp(c, 0, grid - 1);
}

}  // namespace

std::vector<SubArea> default_sub_areas() {
    return {
        SubArea{{0.50, 0.50}, 0.1},
        SubArea{{0.25, 0.25}, 0.1},
        SubArea{{0.25, 0.75}, 0.1},
        SubArea{{0.75, 0.25}, 0.1},
        SubArea{{0.75, 0.75}, 0.1},
    };
}

CongestionReport run_congestion(Network net, const TrafficConfig& cfg, Protocol protocol,
                                std::vector<SubArea> sub_areas, int grid_size) {
    if (grid_size < 1) {
        throw std::invalid_argument("congestion: grid size must be >= 1");
    }
    net.set_all_batteries(kEffectivelyInfiniteBattery);

    CongestionReport report;
    report.protocol = protocol;
    report.message_count = cfg.message_count;
    report.sub_areas = std::move(sub_areas);
    report.area_message_counts.assign(report.sub_areas.size(), 0);
    report.node_relay_counts.assign(net.size(), 0);
    report.grid_size = grid_size;
    report.heatmap.assign(static_cast<std::size_t>(grid_size) * grid_size, 0);

    const auto pairs = generate_traffic(net, cfg);
    report.traffic_digest = traffic_digest(pairs);
    Rng image_rng = image_stream(cfg);

    std::vector<bool> touched(report.sub_areas.size());
    for (const TrafficPair& pair : pairs) {
        const auto [outcome, routed] = route_pair(net, pair, protocol, image_rng);
        if (!routed) continue;  // unreachable here: batteries are infinite
        report.delivered_count += outcome.delivered() ? 1 : 0;
        std::fill(touched.begin(), touched.end(), false);
        for (NodeId v : outcome.path) {
            ++report.node_relay_counts[v];
            const SquarePoint& p = net.node(v).pos;
            ++report.heatmap[static_cast<std::size_t>(heat_cell(p.y, grid_size)) * grid_size +
                             heat_cell(p.x, grid_size)];
            for (std::size_t a = 0; a < report.sub_areas.size(); ++a) {
                if (!touched[a] && report.sub_areas[a].contains(p)) {
                    touched[a] = true;
                    ++report.area_message_counts[a];
                }
            }
        }
    }

    report.total_transmissions = static_cast<std::uint64_t>(net.total_transmissions());
    report.area_fractions.reserve(report.sub_areas.size());
    for (std::uint64_t count : report.area_message_counts) {
        report.area_fractions.push_back(
            cfg.message_count == 0 ? 0.0
                                   : static_cast<double>(count) /
                                         static_cast<double>(cfg.message_count));
    }
    return report;
}

EnergyReport run_energy(const Network& net, const TrafficConfig& cfg) {
    EnergyReport report;
    report.message_count = cfg.message_count;

    const auto pairs = generate_traffic(net, cfg);
    report.traffic_digest = traffic_digest(pairs);

    for (Protocol protocol : {Protocol::Geographic, Protocol::OuterSpace}) {
        Network copy = net;  // identical copy per protocol
        copy.set_all_batteries(kEffectivelyInfiniteBattery);
        Rng image_rng = image_stream(cfg);
        std::uint64_t delivered = 0;
        for (const TrafficPair& pair : pairs) {
            const auto [outcome, routed] = route_pair(copy, pair, protocol, image_rng);
            if (routed && outcome.delivered()) ++delivered;
        }
        const auto total = static_cast<std::uint64_t>(copy.total_transmissions());
        if (protocol == Protocol::Geographic) {
            report.geographic_transmissions = total;
            report.geographic_delivered = delivered;
        } else {
            report.outer_transmissions = total;
            report.outer_delivered = delivered;
        }
    }
    report.ratio = report.geographic_transmissions == 0
                       ? 0.0
                       : static_cast<double>(report.outer_transmissions) /
                             static_cast<double>(report.geographic_transmissions);
    return report;
}

const char* stop_cause_name(StopCause cause) {
    return cause == StopCause::FirstNodeDeath ? "first-node-death" : "delivery-below-threshold";
}

namespace {

LifetimeReport lifetime_first_death_one(const NetworkConfig& net_cfg, const TrafficConfig& cfg,
                                        Protocol protocol) {
    Network net = Network::generate(net_cfg);
    const auto pairs = generate_traffic(net, cfg);
    Rng image_rng = image_stream(cfg);

    LifetimeReport report;
    report.protocol = protocol;
    report.stop_cause = StopCause::FirstNodeDeath;
    report.traffic_digest = traffic_digest(pairs);

    for (const TrafficPair& pair : pairs) {
        const std::size_t alive_before = net.alive_count();
        const auto [outcome, routed] = route_pair(net, pair, protocol, image_rng);
        ++report.messages_routed;
        if (net.alive_count() < alive_before) {
            // The first death happened during this message; its own delivery
            // (if any) completes at/after the death instant and is excluded.
            report.first_dead_node = net.first_dead_node();
            report.total_transmissions = static_cast<std::uint64_t>(net.total_transmissions());
            return report;
        }
        if (routed && outcome.delivered()) ++report.messages_delivered;
    }
    throw TrafficExhaustedError(
        "lifetime: no node died within " + std::to_string(cfg.message_count) +
        " messages; increase the message count or lower the initial battery");
}

LifetimeReport lifetime_threshold_one(const NetworkConfig& net_cfg, const TrafficConfig& cfg,
                                      Protocol protocol, double threshold,
                                      std::uint64_t window) {
    Network net = Network::generate(net_cfg);
    const auto pairs = generate_traffic(net, cfg);
    Rng image_rng = image_stream(cfg);

    LifetimeReport report;
    report.protocol = protocol;
    report.stop_cause = StopCause::DeliveryBelowThreshold;
    report.traffic_digest = traffic_digest(pairs);
    report.threshold = threshold;
    report.window = window;

    std::vector<bool> ring(window, false);
    std::uint64_t in_window = 0;

    for (const TrafficPair& pair : pairs) {
        const auto [outcome, routed] = route_pair(net, pair, protocol, image_rng);
        const bool ok = routed && outcome.delivered();
        const std::size_t slot = report.messages_routed % window;
        if (report.messages_routed >= window) {
            in_window -= ring[slot] ? 1 : 0;
        }
        ring[slot] = ok;
        in_window += ok ? 1 : 0;
        ++report.messages_routed;
        report.messages_delivered += ok ? 1 : 0;

        if (report.messages_routed >= window) {
            const double ratio =
                static_cast<double>(in_window) / static_cast<double>(window);
            if (ratio < threshold) {
                report.total_transmissions =
                    static_cast<std::uint64_t>(net.total_transmissions());
                return report;
            }
        }
    }
    throw TrafficExhaustedError(
        "lifetime: windowed delivery ratio never fell below " + std::to_string(threshold) +
        " within " + std::to_string(cfg.message_count) +
        " messages; increase the message count or lower the initial battery");
}

double delivered_ratio(const LifetimePair& pair) {
    return pair.geographic.messages_delivered == 0
               ? 0.0
               : static_cast<double>(pair.outer.messages_delivered) /
                     static_cast<double>(pair.geographic.messages_delivered);
}

}  // namespace

LifetimePair run_lifetime_first_death(const NetworkConfig& net_cfg, const TrafficConfig& cfg) {
    LifetimePair pair;
    pair.geographic = lifetime_first_death_one(net_cfg, cfg, Protocol::Geographic);
    pair.outer = lifetime_first_death_one(net_cfg, cfg, Protocol::OuterSpace);
    pair.delivered_ratio = delivered_ratio(pair);
    return pair;
}

LifetimePair run_lifetime_delivery_threshold(const NetworkConfig& net_cfg,
                                             const TrafficConfig& cfg, double threshold,
                                             std::uint64_t window) {
    if (window < 1) {
        throw std::invalid_argument("lifetime: window must be >= 1");
    }
    LifetimePair pair;
    pair.geographic =
        lifetime_threshold_one(net_cfg, cfg, Protocol::Geographic, threshold, window);
    pair.outer = lifetime_threshold_one(net_cfg, cfg, Protocol::OuterSpace, threshold, window);
    pair.delivered_ratio = delivered_ratio(pair);
    return pair;
}

StretchReport run_stretch(const StretchConfig& cfg) {
    if (cfg.samples < 1) {
        throw std::invalid_argument("stretch: sample count must be >= 1");
    }
    StretchReport report;
    report.samples = cfg.samples;

    Rng rng(derive_seed(cfg.seed, 0x73747265ULL));
    double sum_square = 0.0;
    double sum_torus = 0.0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        const SquarePoint u = random_square_point(rng);
        const SquarePoint v = random_square_point(rng);
        sum_square += square_distance(u, v);
        sum_torus += torus_distance(map_point(u, random_image_choice(rng)),
                                    map_point(v, random_image_choice(rng)));
    }
    report.mean_square_distance = sum_square / static_cast<double>(cfg.samples);
    report.mean_torus_distance = sum_torus / static_cast<double>(cfg.samples);
    report.distance_ratio = report.mean_torus_distance / report.mean_square_distance;

    if (cfg.with_routing) {
        report.routed = true;
        report.route_messages = cfg.route_messages;
        Network net = Network::generate(cfg.network);
        const TrafficConfig traffic_cfg{cfg.route_messages, derive_seed(cfg.seed, 1)};
        const auto pairs = generate_traffic(net, traffic_cfg);
        Rng image_rng = image_stream(traffic_cfg);

        Network geo_net = net;
        geo_net.set_all_batteries(kEffectivelyInfiniteBattery);
        Network outer_net = std::move(net);
        outer_net.set_all_batteries(kEffectivelyInfiniteBattery);

        std::uint64_t geo_hops = 0;
        std::uint64_t outer_hops = 0;
        for (const TrafficPair& pair : pairs) {
            const auto geo =
                route_geographic(geo_net, make_geographic_message(geo_net, pair.first, pair.second));
            const auto outer = route_outer_space(
                outer_net,
                make_outer_space_message(outer_net, pair.first, pair.second, image_rng));
            if (geo.delivered() && outer.delivered()) {
                ++report.both_delivered;
                geo_hops += geo.hops();
                outer_hops += outer.hops();
            }
        }
        if (report.both_delivered > 0) {
            report.mean_geographic_hops =
                static_cast<double>(geo_hops) / static_cast<double>(report.both_delivered);
            report.mean_outer_hops =
                static_cast<double>(outer_hops) / static_cast<double>(report.both_delivered);
            if (geo_hops > 0) {
                report.hop_ratio = static_cast<double>(outer_hops) / static_cast<double>(geo_hops);
            }
        }
    }
    return report;
}

}  // namespace outerspace
