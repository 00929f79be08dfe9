#include <benchmark/benchmark.h>

#include "outerspace/experiments.hpp"

using namespace outerspace;

namespace {

Network make_network(std::uint32_t nodes) {
    NetworkConfig cfg;
    cfg.node_count = nodes;
    cfg.seed = 1;
    Network net = Network::generate(cfg);
    net.set_all_batteries(kEffectivelyInfiniteBattery);
    return net;
}

void BM_TorusDistance(benchmark::State& state) {
    Rng rng(2);
    const TorusPoint a = random_torus_point(rng);
    const TorusPoint b = random_torus_point(rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(torus_distance(a, b));
    }
}
BENCHMARK(BM_TorusDistance);

void BM_AdjacencyBuild(benchmark::State& state) {
    NetworkConfig cfg;
    cfg.node_count = static_cast<std::uint32_t>(state.range(0));
    cfg.seed = 3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(Network::generate(cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AdjacencyBuild)->Arg(1336)->Arg(5000)->Arg(10000);

void BM_RouteGeographic(benchmark::State& state) {
    Network net = make_network(static_cast<std::uint32_t>(state.range(0)));
    const auto pairs = generate_traffic(net, TrafficConfig{4096, 5});
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [src, dst] = pairs[i++ & 4095];
        benchmark::DoNotOptimize(
            route_geographic(net, make_geographic_message(net, src, dst)));
    }
}
BENCHMARK(BM_RouteGeographic)->Arg(1336)->Arg(5000);

void BM_RouteOuterSpace(benchmark::State& state) {
    Network net = make_network(static_cast<std::uint32_t>(state.range(0)));
    const auto pairs = generate_traffic(net, TrafficConfig{4096, 5});
    Rng image_rng(6);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [src, dst] = pairs[i++ & 4095];
        benchmark::DoNotOptimize(
            route_outer_space(net, make_outer_space_message(net, src, dst, image_rng)));
    }
}
BENCHMARK(BM_RouteOuterSpace)->Arg(1336)->Arg(5000);

void BM_OracleShortestTree(benchmark::State& state) {
    Network net = make_network(1336);
    NodeId src = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_shortest_tree(net, src, PathWeight::Hops));
        src = (src + 1) % static_cast<NodeId>(net.size());
    }
}
BENCHMARK(BM_OracleShortestTree);

}  // namespace

BENCHMARK_MAIN();
