#include <algorithm>
#include <cmath>
#include <memory>

#include "outerspace/experiments.hpp"

namespace outerspace {

const char* surface_name(Surface s) {
    return s == Surface::Square ? "square" : "torus";
}

double default_symmetry_range(Surface surface) {
    // ~35 expected neighbors at 1000 nodes: N * pi * r^2 / area ~ 35.
    return surface == Surface::Torus ? 0.21 : 0.105;
}

namespace {

constexpr std::uint64_t kSymDeploymentDomain = 0x73796d64ULL;
constexpr std::uint64_t kSymPlacementDomain = 0x73796d70ULL;
constexpr std::uint64_t kSymTrafficDomain = 0x73796d74ULL;

// Self-contained graph for the symmetry harness: one adjacency/BFS code path
// serves both surfaces, so the torus/square comparison is like-for-like.
struct SurfaceGraph {
    double side = 0.0;
    std::vector<double> xs, ys;
    std::vector<std::uint32_t> offsets;
    std::vector<NodeId> adjacency;
};

double surface_distance(const SurfaceGraph& g, Surface surface, NodeId a, NodeId b) {
    if (surface == Surface::Torus) {
        return torus_distance(TorusPoint{g.xs[a], g.ys[a]}, TorusPoint{g.xs[b], g.ys[b]});
    }
    return square_distance(SquarePoint{g.xs[a], g.ys[a]}, SquarePoint{g.xs[b], g.ys[b]});
}

SurfaceGraph build_surface_graph(Surface surface, std::uint32_t n, double range,
                                 std::uint64_t seed) {
    SurfaceGraph g;
    g.side = surface == Surface::Torus ? kTorusSide : kSquareSide;
    g.xs.resize(n);
    g.ys.resize(n);
    Rng rng(seed);
    for (std::uint32_t i = 0; i < n; ++i) {
        g.xs[i] = rng.next_unit() * g.side;
        g.ys[i] = rng.next_unit() * g.side;
    }

    // O(N^2) build; the harness runs at ~10^3 nodes.
    std::vector<std::vector<NodeId>> lists(n);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (surface_distance(g, surface, u, v) <= range) {
                lists[u].push_back(v);
                lists[v].push_back(u);
            }
        }
    }
    g.offsets.assign(n + 1, 0);
    for (NodeId u = 0; u < n; ++u) {
        std::sort(lists[u].begin(), lists[u].end());
        g.adjacency.insert(g.adjacency.end(), lists[u].begin(), lists[u].end());
        g.offsets[u + 1] = static_cast<std::uint32_t>(g.adjacency.size());
    }
    return g;
}

std::vector<std::int32_t> bfs_distances(const SurfaceGraph& g, NodeId src) {
    std::vector<std::int32_t> dist(g.xs.size(), -1);
    std::vector<NodeId> queue;
    queue.push_back(src);
    dist[src] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        for (std::uint32_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
            const NodeId v = g.adjacency[e];
            if (dist[v] >= 0) continue;
            dist[v] = dist[u] + 1;
            queue.push_back(v);
        }
    }
    return dist;
}

int region_cell(double coord, double side, int regions) {
    auto c = static_cast<int>(coord / side * regions);
    return std::clamp(c, 0, regions - 1);
}

}  // namespace

SymmetryReport run_symmetry_check(const SymmetryConfig& cfg) {
    if (cfg.node_count < 2) {
        throw std::invalid_argument("symmetry: at least 2 nodes required");
    }
    if (cfg.regions < 1) {
        throw std::invalid_argument("symmetry: regions must be >= 1");
    }
    if (cfg.deployments < 1) {
        throw std::invalid_argument("symmetry: deployments must be >= 1");
    }
    if (cfg.path_count < cfg.deployments) {
        throw std::invalid_argument("symmetry: need at least one path per deployment");
    }
    const double range = cfg.range > 0.0 ? cfg.range : default_symmetry_range(cfg.surface);

    SymmetryReport report;
    report.surface = cfg.surface;
    report.node_count = cfg.node_count;
    report.range = range;
    report.path_count = cfg.path_count;
    report.regions = cfg.regions;
    report.deployments = cfg.deployments;

    const auto n = static_cast<NodeId>(cfg.node_count);
    const int k = cfg.regions;
    const std::uint64_t paths_per_deployment = cfg.path_count / cfg.deployments;
    std::vector<double> region_sum(static_cast<std::size_t>(k) * k, 0.0);
    std::vector<std::uint64_t> region_nodes(static_cast<std::size_t>(k) * k, 0);

    // The symmetry statistic of Definition 1 is an expectation over random
    // deployments as well as random traffic, so the run averages region
    // frequencies over several independent deployments; a single instance's
    // per-node geometry noise would otherwise dominate the region means.
    for (std::uint32_t dep = 0; dep < cfg.deployments; ++dep) {
        const std::uint64_t dep_seed = derive_seed(cfg.seed, kSymDeploymentDomain + dep);
        const SurfaceGraph graph = build_surface_graph(
            cfg.surface, cfg.node_count, range, derive_seed(dep_seed, kSymPlacementDomain));
        Rng traffic_rng(derive_seed(dep_seed, kSymTrafficDomain));

        std::vector<std::unique_ptr<std::vector<std::int32_t>>> dist_cache(n);
        std::vector<std::uint64_t> traversals(n, 0);
        std::uint64_t routed = 0;

        for (std::uint64_t i = 0; i < paths_per_deployment; ++i) {
            const auto src = static_cast<NodeId>(traffic_rng.next_below(n));
            auto dst = static_cast<NodeId>(traffic_rng.next_below(n - 1));
            if (dst >= src) ++dst;

            if (!dist_cache[src]) {
                dist_cache[src] =
                    std::make_unique<std::vector<std::int32_t>>(bfs_distances(graph, src));
            }
            const std::vector<std::int32_t>& dist = *dist_cache[src];
            if (dist[dst] < 0) {
                ++report.unreachable_pairs;
                continue;
            }
            ++routed;

            // Walk dst -> src sampling uniformly-ish among shortest-path
            // predecessors (seeded hash). A fixed lexicographic choice would
            // concentrate traffic on arbitrary nodes and inflate the
            // regional spread; every walk is still an exact shortest path.
            NodeId v = dst;
            ++traversals[v];
            std::uint64_t hop = 0;
            while (v != src) {
                NodeId predecessors[512];
                std::size_t count = 0;
                for (std::uint32_t e = graph.offsets[v];
                     e < graph.offsets[v + 1] && count < std::size(predecessors); ++e) {
                    const NodeId u = graph.adjacency[e];
                    if (dist[u] == dist[v] - 1) predecessors[count++] = u;
                }
                const std::uint64_t pick = splitmix64(dep_seed ^ (i * 1315423911ULL) ^
                                                      (static_cast<std::uint64_t>(v) *
                                                       2654435761ULL) ^
                                                      hop) %
                                           count;
                v = predecessors[pick];
                ++traversals[v];
                ++hop;
            }
        }

        for (NodeId v = 0; v < n; ++v) {
            const int cx = region_cell(graph.xs[v], graph.side, k);
            const int cy = region_cell(graph.ys[v], graph.side, k);
            const auto idx = static_cast<std::size_t>(cy) * k + cx;
            region_sum[idx] += routed == 0 ? 0.0
                                           : static_cast<double>(traversals[v]) /
                                                 static_cast<double>(routed);
            ++region_nodes[idx];
        }
    }

    report.region_mean_frequency.assign(region_sum.size(), 0.0);
    double max_mean = 0.0;
    double min_mean = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < region_sum.size(); ++i) {
        if (region_nodes[i] == 0) continue;  // empty region: excluded from the statistic
        const double mean = region_sum[i] / static_cast<double>(region_nodes[i]);
        report.region_mean_frequency[i] = mean;
        max_mean = std::max(max_mean, mean);
        min_mean = std::min(min_mean, mean);
    }
    report.max_min_ratio = min_mean > 0.0 ? max_mean / min_mean
                                          : std::numeric_limits<double>::infinity();

    // Central cells: the middle cell (odd K) or middle 2x2 block (even K);
    // corner cells: the four corners. For K = 1 both sets are the single
    // region and the ratio is exactly 1.
    auto mean_at = [&](int cx, int cy) {
        return report.region_mean_frequency[static_cast<std::size_t>(cy) * k + cx];
    };
    double center_sum = 0.0;
    int center_count = 0;
    if (k % 2 == 1) {
        center_sum = mean_at(k / 2, k / 2);
        center_count = 1;
    } else {
        for (int cy = k / 2 - 1; cy <= k / 2; ++cy) {
            for (int cx = k / 2 - 1; cx <= k / 2; ++cx) {
                center_sum += mean_at(cx, cy);
                ++center_count;
            }
        }
    }
    const double corner_mean =
        (mean_at(0, 0) + mean_at(k - 1, 0) + mean_at(0, k - 1) + mean_at(k - 1, k - 1)) / 4.0;
    const double center_mean = center_sum / center_count;
    report.center_corner_ratio = corner_mean > 0.0
                                     ? center_mean / corner_mean
                                     : std::numeric_limits<double>::infinity();
    return report;
}

}  // namespace outerspace
