#include "outerspace/io.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "report_json.hpp"

namespace outerspace {

using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf, ptr);
}

std::string network_to_json(const Network& net) {
    json doc;
    doc["side"] = kSquareSide;
    doc["range"] = net.range();
    doc["seed"] = net.seed();
    json nodes = json::array();
    for (const Node& node : net.nodes()) {
        nodes.push_back({{"id", node.id}, {"x", node.pos.x}, {"y", node.pos.y}});
    }
    doc["nodes"] = std::move(nodes);
    return doc.dump(2);
}

Network network_from_json(std::string_view text, std::int64_t initial_battery) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("network json: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("side") || !doc.contains("range") ||
        !doc.contains("seed") || !doc.contains("nodes")) {
        throw std::invalid_argument("network json: expected {side, range, seed, nodes}");
    }
    try {
        if (doc["side"].get<double>() != kSquareSide) {
            throw std::invalid_argument("network json: side must be 1.0");
        }
        const double range = doc["range"].get<double>();
        const auto seed = doc["seed"].get<std::uint64_t>();
        const auto& nodes = doc["nodes"];
        if (!nodes.is_array()) {
            throw std::invalid_argument("network json: nodes must be an array");
        }

        std::vector<SquarePoint> positions(nodes.size());
        std::vector<bool> seen(nodes.size(), false);
        for (const auto& entry : nodes) {
            const auto id = entry.at("id").get<std::uint64_t>();
            if (id >= positions.size() || seen[id]) {
                throw std::invalid_argument("network json: ids must be dense in [0, N)");
            }
            seen[id] = true;
            positions[id] =
                SquarePoint{entry.at("x").get<double>(), entry.at("y").get<double>()};
        }
        return Network::from_positions(std::move(positions), range, seed, initial_battery);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("network json: ") + e.what());
    }
}

namespace detail {

json to_json(const SubArea& area) {
    return json{{"center_x", area.center.x}, {"center_y", area.center.y},
                {"radius", area.radius}};
}

json to_json(const CongestionReport& report) {
    json areas = json::array();
    for (std::size_t i = 0; i < report.sub_areas.size(); ++i) {
        json a = to_json(report.sub_areas[i]);
        a["messages"] = report.area_message_counts[i];
        a["fraction"] = report.area_fractions[i];
        areas.push_back(std::move(a));
    }
    return json{
        {"protocol", protocol_name(report.protocol)},
        {"message_count", report.message_count},
        {"delivered_count", report.delivered_count},
        {"total_transmissions", report.total_transmissions},
        {"traffic_digest", report.traffic_digest},
        {"sub_areas", std::move(areas)},
        {"node_relay_counts", report.node_relay_counts},
        {"grid_size", report.grid_size},
        {"heatmap", report.heatmap},
    };
}

json to_json(const EnergyReport& report) {
    return json{
        {"message_count", report.message_count},
        {"traffic_digest", report.traffic_digest},
        {"geographic_transmissions", report.geographic_transmissions},
        {"outer_transmissions", report.outer_transmissions},
        {"geographic_delivered", report.geographic_delivered},
        {"outer_delivered", report.outer_delivered},
        {"ratio", report.ratio},
    };
}

json to_json(const LifetimeReport& report) {
    json doc{
        {"protocol", protocol_name(report.protocol)},
        {"stop_cause", stop_cause_name(report.stop_cause)},
        {"messages_routed", report.messages_routed},
        {"messages_delivered", report.messages_delivered},
        {"total_transmissions", report.total_transmissions},
        {"traffic_digest", report.traffic_digest},
    };
    if (report.stop_cause == StopCause::FirstNodeDeath) {
        doc["first_dead_node"] = report.first_dead_node;
    } else {
        doc["threshold"] = report.threshold;
        doc["window"] = report.window;
    }
    return doc;
}

json to_json(const LifetimePair& pair) {
    return json{
        {"geographic", to_json(pair.geographic)},
        {"outer", to_json(pair.outer)},
        {"delivered_ratio", pair.delivered_ratio},
    };
}

json to_json(const StretchReport& report) {
    json doc{
        {"samples", report.samples},
        {"mean_square_distance", report.mean_square_distance},
        {"mean_torus_distance", report.mean_torus_distance},
        {"distance_ratio", report.distance_ratio},
        {"routed", report.routed},
    };
    if (report.routed) {
        doc["route_messages"] = report.route_messages;
        doc["both_delivered"] = report.both_delivered;
        doc["mean_geographic_hops"] = report.mean_geographic_hops;
        doc["mean_outer_hops"] = report.mean_outer_hops;
        doc["hop_ratio"] = report.hop_ratio;
    }
    return doc;
}

json to_json(const SymmetryReport& report) {
    return json{
        {"surface", surface_name(report.surface)},
        {"node_count", report.node_count},
        {"range", report.range},
        {"path_count", report.path_count},
        {"unreachable_pairs", report.unreachable_pairs},
        {"regions", report.regions},
        {"deployments", report.deployments},
        {"region_mean_frequency", report.region_mean_frequency},
        {"max_min_ratio", report.max_min_ratio},
        {"center_corner_ratio", report.center_corner_ratio},
    };
}

}  // namespace detail

std::string to_json_string(const CongestionReport& report) {
    return detail::to_json(report).dump(2);
}
std::string to_json_string(const EnergyReport& report) {
    return detail::to_json(report).dump(2);
}
std::string to_json_string(const LifetimePair& pair) {
    return detail::to_json(pair).dump(2);
}
std::string to_json_string(const StretchReport& report) {
    return detail::to_json(report).dump(2);
}
std::string to_json_string(const SymmetryReport& report) {
    return detail::to_json(report).dump(2);
}

std::string congestion_csv(const CongestionReport& report) {
    std::ostringstream out;
    out << "protocol,area_index,center_x,center_y,radius,messages,fraction\n";
    for (std::size_t i = 0; i < report.sub_areas.size(); ++i) {
        const SubArea& a = report.sub_areas[i];
        out << protocol_name(report.protocol) << ',' << i << ',' << format_double(a.center.x)
            << ',' << format_double(a.center.y) << ',' << format_double(a.radius) << ','
            << report.area_message_counts[i] << ',' << format_double(report.area_fractions[i])
            << '\n';
    }
    return out.str();
}

std::string heatmap_csv(const CongestionReport& report) {
    std::ostringstream out;
    out << "row,col,count\n";
    for (int row = 0; row < report.grid_size; ++row) {
        for (int col = 0; col < report.grid_size; ++col) {
            out << row << ',' << col << ','
                << report.heatmap[static_cast<std::size_t>(row) * report.grid_size + col]
                << '\n';
        }
    }
    return out.str();
}

std::string energy_csv(const EnergyReport& report) {
    std::ostringstream out;
    out << "geographic_transmissions,outer_transmissions,ratio,messages\n";
    out << report.geographic_transmissions << ',' << report.outer_transmissions << ','
        << format_double(report.ratio) << ',' << report.message_count << '\n';
    return out.str();
}

std::string lifetime_csv(const LifetimePair& pair) {
    std::ostringstream out;
    out << "protocol,stop_cause,messages_routed,messages_delivered,total_transmissions\n";
    for (const LifetimeReport* r : {&pair.geographic, &pair.outer}) {
        out << protocol_name(r->protocol) << ',' << stop_cause_name(r->stop_cause) << ','
            << r->messages_routed << ',' << r->messages_delivered << ','
            << r->total_transmissions << '\n';
    }
    return out.str();
}

std::string stretch_csv(const StretchReport& report) {
    std::ostringstream out;
    out << "samples,mean_square_distance,mean_torus_distance,distance_ratio,hop_ratio\n";
    out << report.samples << ',' << format_double(report.mean_square_distance) << ','
        << format_double(report.mean_torus_distance) << ','
        << format_double(report.distance_ratio) << ','
        << (report.routed ? format_double(report.hop_ratio) : std::string{}) << '\n';
    return out.str();
}

std::string symmetry_csv(const SymmetryReport& report) {
    std::ostringstream out;
    out << "surface,region_row,region_col,mean_frequency\n";
    for (int row = 0; row < report.regions; ++row) {
        for (int col = 0; col < report.regions; ++col) {
            out << surface_name(report.surface) << ',' << row << ',' << col << ','
                << format_double(
                       report.region_mean_frequency[static_cast<std::size_t>(row) *
                                                        report.regions +
                                                    col])
                << '\n';
        }
    }
    return out.str();
}

std::string route_trace_csv(std::span<const TraceEntry> entries) {
    std::ostringstream out;
    out << "msg_id,protocol,src,dst,status,hops,path\n";
    for (const TraceEntry& e : entries) {
        out << e.msg_id << ',' << protocol_name(e.protocol) << ',' << e.src << ',' << e.dst
            << ',' << (e.outcome.delivered() ? "Delivered" : "DeadEnd") << ','
            << e.outcome.hops() << ',';
        for (std::size_t i = 0; i < e.outcome.path.size(); ++i) {
            if (i > 0) out << ';';
            out << e.outcome.path[i];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace outerspace
