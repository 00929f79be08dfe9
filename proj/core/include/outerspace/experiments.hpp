#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "outerspace/routing.hpp"
#include "outerspace/traffic.hpp"

namespace outerspace {

/// Circular measurement region on the square.
struct SubArea {
    SquarePoint center;
    double radius = 0.1;

    bool contains(const SquarePoint& p) const { return square_distance(center, p) <= radius; }
};

/// The five canonical sub-areas: the center and the four middle-half-diagonal
/// points, each a circle of radius 0.1 (~3.14% of the square).
std::vector<SubArea> default_sub_areas();

struct CongestionReport {
    Protocol protocol = Protocol::Geographic;
    std::uint64_t message_count = 0;
    std::uint64_t delivered_count = 0;
    std::uint64_t total_transmissions = 0;
    std::uint64_t traffic_digest = 0;
    std::vector<SubArea> sub_areas;
    std::vector<std::uint64_t> area_message_counts;  // messages whose path touches the area
    std::vector<double> area_fractions;              // counts / message_count
    std::vector<std::uint64_t> node_relay_counts;    // per node: messages whose path contains it
    int grid_size = 30;
    std::vector<std::uint64_t> heatmap;  // grid_size^2 path-node incidences, row-major

    double central_fraction() const { return area_fractions.empty() ? 0.0 : area_fractions[0]; }
};

/// Routes the whole traffic stream with one protocol over a copy of the
/// network with effectively infinite batteries (the measurement must not be
/// perturbed by deaths) and reports sub-area traversal fractions, per-node
/// relay counts, and a relay heatmap. A message counts for a sub-area iff
/// any node of its path, source and terminal node included, lies within it;
/// dead-end messages count like delivered ones.
CongestionReport run_congestion(Network net, const TrafficConfig& cfg, Protocol protocol,
                                std::vector<SubArea> sub_areas = default_sub_areas(),
                                int grid_size = 30);

struct EnergyReport {
    std::uint64_t message_count = 0;
    std::uint64_t traffic_digest = 0;
    std::uint64_t geographic_transmissions = 0;
    std::uint64_t outer_transmissions = 0;
    std::uint64_t geographic_delivered = 0;
    std::uint64_t outer_delivered = 0;
    double ratio = 0.0;  // outer / geographic transmissions
};

/// Total energy (= total transmissions, one unit per hop, dead-end hops
/// included) for both protocols over identical network copies and an
/// identical traffic stream.
EnergyReport run_energy(const Network& net, const TrafficConfig& cfg);

enum class StopCause { FirstNodeDeath, DeliveryBelowThreshold };

const char* stop_cause_name(StopCause cause);

/// Raised when the traffic stream ends before the experiment's stop
/// condition triggers.
class TrafficExhaustedError : public std::runtime_error {
public:
    explicit TrafficExhaustedError(const std::string& what) : std::runtime_error(what) {}
};

struct LifetimeReport {
    Protocol protocol = Protocol::Geographic;
    StopCause stop_cause = StopCause::FirstNodeDeath;
    std::uint64_t messages_routed = 0;     // messages attempted up to the stop point
    std::uint64_t messages_delivered = 0;  // delivered before the stop condition
    std::uint64_t total_transmissions = 0;
    std::uint64_t traffic_digest = 0;
    NodeId first_dead_node = kInvalidNode;
    double threshold = 0.0;    // threshold variant only
    std::uint64_t window = 0;  // threshold variant only
};

struct LifetimePair {
    LifetimeReport geographic;
    LifetimeReport outer;
    double delivered_ratio = 0.0;  // outer delivered / geographic delivered
};

/// Messages delivered before the first node death, per protocol, over
/// identical networks (same config) and an identical traffic stream.
/// Throws TrafficExhaustedError if no node dies within the stream.
LifetimePair run_lifetime_first_death(const NetworkConfig& net_cfg, const TrafficConfig& cfg);

/// Messages delivered before the sliding-window delivery success ratio falls
/// under the threshold. The window is evaluated only once full. Throws
/// TrafficExhaustedError if the ratio never falls below the threshold.
LifetimePair run_lifetime_delivery_threshold(const NetworkConfig& net_cfg,
                                             const TrafficConfig& cfg, double threshold = 0.95,
                                             std::uint64_t window = 1000);

struct StretchConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    bool with_routing = false;  // also route a message set to compare hop counts
    NetworkConfig network;      // routed comparison network
    std::uint64_t route_messages = 20000;
};

struct StretchReport {
    std::uint64_t samples = 0;
    double mean_square_distance = 0.0;  // Monte-Carlo estimate of E[d_S]
    double mean_torus_distance = 0.0;   // E[d_T] over random image pairs
    double distance_ratio = 0.0;        // torus / square
    bool routed = false;
    std::uint64_t route_messages = 0;
    std::uint64_t both_delivered = 0;  // messages delivered under both protocols
    double mean_geographic_hops = 0.0;
    double mean_outer_hops = 0.0;
    double hop_ratio = 0.0;  // outer / geographic mean hops over both_delivered
};

/// Monte-Carlo stretch estimate: for uniform point pairs on the square and
/// independent uniform image choices, the mean torus distance between the
/// images against the mean square distance. Optionally also routes a message
/// set both ways on a dense network and reports the realized hop ratio.
StretchReport run_stretch(const StretchConfig& cfg);

enum class Surface { Square, Torus };

const char* surface_name(Surface s);

struct SymmetryConfig {
    Surface surface = Surface::Torus;
    std::uint32_t node_count = 1000;
    double range = 0.0;  // 0 = default for the surface (matched mean degree)
    std::uint64_t path_count = 100000;  // total, split across deployments
    int regions = 4;      // K: the surface is partitioned into K x K regions
    std::uint32_t deployments = 5;  // independent node placements averaged over
    std::uint64_t seed = 0;
};

/// Default radio range giving ~35 neighbors on average at 1000 nodes.
double default_symmetry_range(Surface surface);

struct SymmetryReport {
    Surface surface = Surface::Torus;
    std::uint32_t node_count = 0;
    double range = 0.0;
    std::uint64_t path_count = 0;
    std::uint64_t unreachable_pairs = 0;
    int regions = 0;
    std::uint32_t deployments = 0;
    std::vector<double> region_mean_frequency;  // K*K row-major mean node frequencies
    double max_min_ratio = 0.0;                 // max/min over regions
    double center_corner_ratio = 0.0;           // central cells vs corner cells
};

/// Empirical symmetry check: nodes deployed uniformly directly on the chosen
/// surface, uniform traffic routed along exact shortest paths (hop metric),
/// and per-region mean node-traversal frequencies compared. On the torus the
/// max/min regional ratio stays near 1; the square run shows the central
/// hotspot instead.
SymmetryReport run_symmetry_check(const SymmetryConfig& cfg);

}  // namespace outerspace
