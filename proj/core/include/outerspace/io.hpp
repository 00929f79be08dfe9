#pragma once

#include <span>
#include <string>
#include <string_view>

#include "outerspace/experiments.hpp"

namespace outerspace {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Network document: {"side": 1.0, "range": r, "seed": s,
/// "nodes": [{"id": i, "x": x, "y": y}, ...]}. Batteries and images are
/// derivable (from the config and the seed) and are not serialized.
std::string network_to_json(const Network& net);

/// Rebuilds a network from the document above; adjacency and images come out
/// identical to the serialized instance. Batteries start at initial_battery.
Network network_from_json(std::string_view text, std::int64_t initial_battery = 500);

// JSON payloads for the report types (two-space indent, sorted keys,
// deterministic byte-for-byte for identical reports).
std::string to_json_string(const CongestionReport& report);
std::string to_json_string(const EnergyReport& report);
std::string to_json_string(const LifetimePair& pair);
std::string to_json_string(const StretchReport& report);
std::string to_json_string(const SymmetryReport& report);

// Flat CSV tables, one per experiment result.
std::string congestion_csv(const CongestionReport& report);
std::string heatmap_csv(const CongestionReport& report);
std::string energy_csv(const EnergyReport& report);
std::string lifetime_csv(const LifetimePair& pair);
std::string stretch_csv(const StretchReport& report);
std::string symmetry_csv(const SymmetryReport& report);

/// One routed message for trace export.
struct TraceEntry {
    std::uint64_t msg_id = 0;
    Protocol protocol = Protocol::Geographic;
    NodeId src = kInvalidNode;
    NodeId dst = kInvalidNode;
    RouteOutcome outcome;
};

/// msg_id,protocol,src,dst,status,hops,path with the path ids ';'-joined.
std::string route_trace_csv(std::span<const TraceEntry> entries);

}  // namespace outerspace
