#include "outerspace/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace outerspace {

double chi_square_uniform(std::span<const std::uint64_t> counts, std::uint64_t total) {
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double chi2 = 0.0;
    for (std::uint64_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        chi2 += d * d / expected;
    }
    return chi2;
}

namespace {

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

// d_S(u,v) <= d_T(image(u), image(v)) for every pair of image choices. The
// inequality is exact in real arithmetic; reflected coordinates (2 - x)
// round, so equality cases can come out one ulp under. Tolerance matches
// the metric-axiom checks.
CheckResult check_domination(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 1));
    constexpr int kPairs = 100000;
    constexpr double kTol = 1e-12;
    std::uint64_t violations = 0;
    for (int i = 0; i < kPairs; ++i) {
        const SquarePoint u = random_square_point(rng);
        const SquarePoint v = random_square_point(rng);
        const double ds = square_distance(u, v);
        for (int cu = 0; cu < kImageChoiceCount; ++cu) {
            for (int cv = 0; cv < kImageChoiceCount; ++cv) {
                const double dt = torus_distance(map_point(u, ImageChoice::from_index(cu)),
                                                 map_point(v, ImageChoice::from_index(cv)));
                if (!(ds <= dt + kTol)) ++violations;
            }
        }
    }
    return {"geometry.domination", violations == 0,
            std::to_string(kPairs) + " pairs x 16 image combinations (tol 1e-12), " +
                std::to_string(violations) + " violations"};
}

CheckResult check_torus_metric(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 2));
    constexpr int kTriples = 100000;
    constexpr double kTol = 1e-12;
    std::uint64_t violations = 0;
    double max_hop = 0.0;
    for (int i = 0; i < kTriples; ++i) {
        const TorusPoint a = random_torus_point(rng);
        const TorusPoint b = random_torus_point(rng);
        const TorusPoint c = random_torus_point(rng);
        const double ab = torus_distance(a, b);
        if (ab != torus_distance(b, a)) ++violations;           // symmetry, exact
        if (torus_distance(a, a) != 0.0) ++violations;          // identity
        if (ab > std::sqrt(2.0)) ++violations;                  // diameter of [0,2)^2
        const double ac = torus_distance(a, c);
        const double cb = torus_distance(c, b);
        if (ab > ac + cb + kTol) ++violations;                  // triangle inequality
        max_hop = std::max(max_hop, ab);
    }
    return {"geometry.torus_metric", violations == 0,
            std::to_string(kTriples) + " triples, max distance " + fmt(max_hop) +
                " (bound " + fmt(std::sqrt(2.0)) + "), " + std::to_string(violations) +
                " violations"};
}

// Property 2: uniform points mapped through random choices land uniformly
// on the torus (chi-square over a 10x10 grid at significance 0.01).
CheckResult check_mapped_uniformity(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 3));
    constexpr int kPoints = 100000;
    constexpr int kGrid = 10;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(kGrid) * kGrid, 0);
    for (int i = 0; i < kPoints; ++i) {
        const TorusPoint t = map_point(random_square_point(rng), random_image_choice(rng));
        const int cx = std::min(kGrid - 1, static_cast<int>(t.x / kTorusSide * kGrid));
        const int cy = std::min(kGrid - 1, static_cast<int>(t.y / kTorusSide * kGrid));
        ++counts[static_cast<std::size_t>(cy) * kGrid + cx];
    }
    const double chi2 = chi_square_uniform(counts, kPoints);
    return {"geometry.mapped_uniformity", chi2 < kChi2Crit99Dof001,
            "chi2 " + fmt(chi2) + " vs critical " + fmt(kChi2Crit99Dof001) +
                " (dof 99, alpha 0.01)"};
}

CheckResult check_image_choice_equidistribution(std::uint64_t seed) {
    constexpr int kIds = 100000;
    const FairMapper mapper(seed);
    std::vector<std::uint64_t> fixed_counts(kImageChoiceCount, 0);
    for (int id = 0; id < kIds; ++id) {
        ++fixed_counts[node_image_choice(mapper, id).index()];
    }
    constexpr int kDraws = 400000;
    Rng rng(derive_seed(seed, 4));
    std::vector<std::uint64_t> drawn_counts(kImageChoiceCount, 0);
    for (int i = 0; i < kDraws; ++i) {
        ++drawn_counts[random_image_choice(rng).index()];
    }

    bool ok = true;
    double worst = 0.0;
    for (int c = 0; c < kImageChoiceCount; ++c) {
        const double f_fixed = static_cast<double>(fixed_counts[c]) / kIds;
        const double f_drawn = static_cast<double>(drawn_counts[c]) / kDraws;
        worst = std::max({worst, std::fabs(f_fixed - 0.25), std::fabs(f_drawn - 0.25)});
        ok = ok && std::fabs(f_fixed - 0.25) <= 0.01 && std::fabs(f_drawn - 0.25) <= 0.01;
    }
    const double chi2 = chi_square_uniform(fixed_counts, kIds);
    ok = ok && chi2 < kChi2Crit3Dof001;
    return {"geometry.image_choice_equidistribution", ok,
            "worst |freq - 0.25| " + fmt(worst) + " (tol 0.01), chi2 " + fmt(chi2) +
                " vs " + fmt(kChi2Crit3Dof001)};
}

CheckResult check_adjacency_bruteforce(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 5));
    constexpr int kNetworks = 50;
    std::uint64_t mismatches = 0;
    for (int i = 0; i < kNetworks; ++i) {
        const auto n = static_cast<std::uint32_t>(2 + rng.next_below(199));
        const double r = 0.05 + rng.next_unit() * 0.2;
        NetworkConfig cfg;
        cfg.mode = DeployMode::Fixed;
        cfg.node_count = n;
        cfg.range = r;
        cfg.seed = rng.next_u64();
        const Network net = Network::generate(cfg);
        for (NodeId u = 0; u < n; ++u) {
            std::vector<NodeId> brute;
            for (NodeId v = 0; v < n; ++v) {
                if (v != u && square_distance(net.node(u).pos, net.node(v).pos) <= r) {
                    brute.push_back(v);
                }
            }
            const auto fast = net.neighbors(u);
            if (!std::equal(fast.begin(), fast.end(), brute.begin(), brute.end())) {
                ++mismatches;
            }
        }
    }
    return {"network.adjacency_bruteforce", mismatches == 0,
            std::to_string(kNetworks) + " networks (N <= 200), " +
                std::to_string(mismatches) + " node lists differ from O(N^2) recomputation"};
}

CheckResult check_traffic_uniformity(std::uint64_t seed) {
    constexpr std::uint32_t kNodes = 100;
    constexpr std::uint64_t kPairs = 100000;
    const auto pairs = generate_traffic(kNodes, TrafficConfig{kPairs, derive_seed(seed, 6)});
    std::vector<std::uint64_t> src_counts(kNodes, 0);
    std::vector<std::uint64_t> dst_counts(kNodes, 0);
    std::uint64_t self_pairs = 0;
    for (const auto& [src, dst] : pairs) {
        ++src_counts[src];
        ++dst_counts[dst];
        if (src == dst) ++self_pairs;
    }
    std::uint64_t worst = 0;
    for (std::uint32_t i = 0; i < kNodes; ++i) {
        const auto dev = [&](std::uint64_t c) {
            return c > 1000 ? c - 1000 : 1000 - c;
        };
        worst = std::max({worst, dev(src_counts[i]), dev(dst_counts[i])});
    }
    const bool ok = worst <= 150 && self_pairs == 0;
    return {"traffic.source_uniformity", ok,
            "worst |count - 1000| = " + std::to_string(worst) + " (tol 150), " +
                std::to_string(self_pairs) + " self pairs"};
}

// Loop-freedom, strict per-hop metric decrease, and physical validity of
// every consecutive hop, for both protocols.
CheckResult check_greedy_invariants(std::uint64_t seed) {
    NetworkConfig net_cfg;
    net_cfg.mode = DeployMode::Fixed;
    net_cfg.node_count = 1336;
    net_cfg.range = 0.1;
    net_cfg.seed = derive_seed(seed, 7);
    Network net = Network::generate(net_cfg);
    net.set_all_batteries(kEffectivelyInfiniteBattery);

    constexpr std::uint64_t kMessages = 10000;
    const auto pairs = generate_traffic(net, TrafficConfig{kMessages, derive_seed(seed, 8)});
    Rng image_rng(derive_seed(seed, 9));

    std::uint64_t violations = 0;
    std::vector<bool> seen(net.size());
    for (std::uint64_t i = 0; i < kMessages; ++i) {
        const auto& [src, dst] = pairs[i];
        const Protocol protocol = i % 2 == 0 ? Protocol::Geographic : Protocol::OuterSpace;
        const Message msg = protocol == Protocol::Geographic
                                ? make_geographic_message(net, src, dst)
                                : make_outer_space_message(net, src, dst, image_rng);
        const RouteOutcome outcome = route(net, RouteRequest{protocol, msg});

        std::fill(seen.begin(), seen.end(), false);
        const std::vector<double> trace = route_metric_trace(net, msg, protocol, outcome);
        double prev_key = std::numeric_limits<double>::infinity();
        for (std::size_t h = 0; h < outcome.path.size(); ++h) {
            const NodeId v = outcome.path[h];
            if (seen[v]) ++violations;  // loop
            seen[v] = true;
            if (!(trace[h] < prev_key)) ++violations;  // strict decrease, exact comparison
            prev_key = trace[h];
            if (h > 0 &&
                square_distance(net.node(outcome.path[h - 1]).pos, net.node(v).pos) >
                    net.range()) {
                ++violations;  // physically invalid hop
            }
        }
        if (outcome.delivered() && outcome.path.back() != dst) ++violations;
        if (outcome.hops() >= net.size()) ++violations;  // must terminate in < N hops
    }
    return {"routing.loop_free_monotone", violations == 0,
            std::to_string(kMessages) + " messages (both protocols), " +
                std::to_string(violations) + " violations"};
}

CheckResult check_symmetry_contrast(std::uint64_t seed) {
    SymmetryConfig torus_cfg;
    torus_cfg.surface = Surface::Torus;
    torus_cfg.seed = derive_seed(seed, 10);
    const SymmetryReport torus = run_symmetry_check(torus_cfg);

    SymmetryConfig square_cfg;
    square_cfg.surface = Surface::Square;
    square_cfg.seed = derive_seed(seed, 11);
    const SymmetryReport square = run_symmetry_check(square_cfg);

    const bool ok = torus.max_min_ratio <= 1.15 && square.center_corner_ratio >= 1.5;
    return {"symmetry.torus_vs_square", ok,
            "torus max/min " + fmt(torus.max_min_ratio) + " (tol 1.15), square center/corner " +
                fmt(square.center_corner_ratio) + " (must be >= 1.5)"};
}

}  // namespace

std::vector<CheckResult> run_validation_suite(std::uint64_t seed) {
    return {
        check_domination(seed),
        check_torus_metric(seed),
        check_mapped_uniformity(seed),
        check_image_choice_equidistribution(seed),
        check_adjacency_bruteforce(seed),
        check_traffic_uniformity(seed),
        check_greedy_invariants(seed),
        check_symmetry_contrast(seed),
    };
}

}  // namespace outerspace
