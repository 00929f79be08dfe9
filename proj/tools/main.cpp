// Command-line front end: maps flags onto the config-file key space and
// hands the merged, validated run description to the orchestrator.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "outerspace/runconfig.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "outerspace: greedy geographic routing on the unit square vs its torus-mapped "
        "variant; congestion, energy, lifetime, stretch, and symmetry experiments"};

    std::string config_path;
    std::string command;
    std::vector<std::uint64_t> seeds;
    std::uint32_t nodes = 0;
    double density = 0.0;
    double range = 0.0;
    std::uint64_t messages = 0;
    std::int64_t battery = 0;
    double threshold = 0.0;
    std::uint64_t window = 0;
    std::string protocol;
    std::string out_path;
    std::string format;

    app.add_option("--config", config_path, "Config file (flat `section.key = value` lines)");
    app.add_option("--command", command,
                   "generate|route|congestion|energy|lifetime-first-death|"
                   "lifetime-threshold|stretch|symmetry|validate");
    app.add_option("--seed", seeds, "Run seed; repeat the flag for multi-seed sweeps");
    auto* nodes_opt = app.add_option("--nodes", nodes, "Fixed node count");
    auto* density_opt =
        app.add_option("--density", density, "Poisson density (expected node count)");
    nodes_opt->excludes(density_opt);
    density_opt->excludes(nodes_opt);
    app.add_option("--range", range, "Transmission range (default 0.1)");
    app.add_option("--messages", messages, "Traffic stream length");
    app.add_option("--battery", battery, "Initial battery in transmissions (default 500)");
    app.add_option("--threshold", threshold, "Delivery-ratio threshold (default 0.95)");
    app.add_option("--window", window, "Delivery-ratio sliding window (default 1000)");
    app.add_option("--protocol", protocol, "geo|outer|both (default both)");
    app.add_option("--out", out_path, "Output path prefix (default out/<command>)");
    app.add_option("--format", format, "json|csv (default json)");

    CLI11_PARSE(app, argc, argv);

    outerspace::FlagOverrides flags;
    if (!command.empty()) flags.emplace_back("command", command);
    if (!seeds.empty()) {
        std::string joined;
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            if (i > 0) joined += ',';
            joined += std::to_string(seeds[i]);
        }
        flags.emplace_back("run.seeds", joined);
    }
    if (nodes_opt->count() > 0) flags.emplace_back("network.nodes", std::to_string(nodes));
    if (density_opt->count() > 0) {
        flags.emplace_back("network.density", std::to_string(density));
    }
    if (app.count("--range") > 0) flags.emplace_back("network.range", std::to_string(range));
    if (app.count("--messages") > 0) {
        flags.emplace_back("traffic.messages", std::to_string(messages));
    }
    if (app.count("--battery") > 0) {
        flags.emplace_back("network.battery", std::to_string(battery));
    }
    if (app.count("--threshold") > 0) {
        flags.emplace_back("run.threshold", std::to_string(threshold));
    }
    if (app.count("--window") > 0) flags.emplace_back("run.window", std::to_string(window));
    if (!protocol.empty()) flags.emplace_back("run.protocol", protocol);
    if (!out_path.empty()) flags.emplace_back("output.path", out_path);
    if (!format.empty()) flags.emplace_back("output.format", format);

    try {
        const outerspace::RunConfig cfg =
            config_path.empty()
                ? outerspace::parse_config(std::nullopt, flags, std::cerr)
                : outerspace::parse_config_file(config_path, flags, std::cerr);
        return outerspace::execute(cfg, std::cout);
    } catch (const outerspace::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
