#include "outerspace/runconfig.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "outerspace/io.hpp"
#include "outerspace/validate.hpp"
#include "report_json.hpp"

namespace outerspace {

namespace fs = std::filesystem;
using nlohmann::json;

const char* command_name(Command c) {
    switch (c) {
        case Command::Generate: return "generate";
        case Command::Route: return "route";
        case Command::Congestion: return "congestion";
        case Command::Energy: return "energy";
        case Command::LifetimeFirstDeath: return "lifetime-first-death";
        case Command::LifetimeThreshold: return "lifetime-threshold";
        case Command::Stretch: return "stretch";
        case Command::Symmetry: return "symmetry";
        case Command::Validate: return "validate";
    }
    return "?";
}

namespace {

constexpr std::uint64_t kNetSeedDomain = 201;
constexpr std::uint64_t kTrafficSeedDomain = 202;
constexpr std::uint64_t kStretchSeedDomain = 203;
constexpr std::uint64_t kSymmetrySeedDomain = 204;
constexpr std::uint64_t kValidateSeedDomain = 205;

std::optional<Command> parse_command_name(std::string_view name) {
    for (Command c : {Command::Generate, Command::Route, Command::Congestion, Command::Energy,
                      Command::LifetimeFirstDeath, Command::LifetimeThreshold, Command::Stretch,
                      Command::Symmetry, Command::Validate}) {
        if (name == command_name(c)) return c;
    }
    return std::nullopt;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

template <typename T>
T parse_number(const std::string& key, std::string_view value) {
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError(key + ": cannot parse value '" + std::string(value) + "'");
    }
    return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& key, std::string_view value) {
    std::vector<std::uint64_t> seeds;
    std::size_t start = 0;
    while (start <= value.size()) {
        const std::size_t comma = value.find(',', start);
        const std::string_view item =
            trim(value.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (item.empty()) {
            throw ConfigError(key + ": empty seed entry");
        }
        seeds.push_back(parse_number<std::uint64_t>(key, item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return seeds;
}

// One typed assignment per known key; anything else is an unknown-key error.
void apply_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "command") {
        const auto c = parse_command_name(value);
        if (!c) throw ConfigError("command: unknown command '" + value + "'");
        cfg.command = *c;
    } else if (key == "network.mode") {
        if (value == "fixed") {
            cfg.network.mode = DeployMode::Fixed;
        } else if (value == "poisson") {
            cfg.network.mode = DeployMode::Poisson;
        } else {
            throw ConfigError("network.mode: expected 'fixed' or 'poisson', got '" + value + "'");
        }
    } else if (key == "network.nodes") {
        cfg.network.node_count = parse_number<std::uint32_t>(key, value);
        cfg.network.mode = DeployMode::Fixed;
    } else if (key == "network.density") {
        cfg.network.density = parse_number<double>(key, value);
        cfg.network.mode = DeployMode::Poisson;
    } else if (key == "network.range") {
        cfg.network.range = parse_number<double>(key, value);
    } else if (key == "network.battery") {
        cfg.network.initial_battery = parse_number<std::int64_t>(key, value);
    } else if (key == "traffic.messages") {
        cfg.traffic.message_count = parse_number<std::uint64_t>(key, value);
    } else if (key == "run.seeds") {
        cfg.seeds = parse_seed_list(key, value);
    } else if (key == "run.protocol") {
        if (value == "geo") {
            cfg.protocol = ProtocolSelection::Geographic;
        } else if (value == "outer") {
            cfg.protocol = ProtocolSelection::Outer;
        } else if (value == "both") {
            cfg.protocol = ProtocolSelection::Both;
        } else {
            throw ConfigError("run.protocol: expected geo|outer|both, got '" + value + "'");
        }
    } else if (key == "run.threshold") {
        cfg.threshold = parse_number<double>(key, value);
    } else if (key == "run.window") {
        cfg.window = parse_number<std::uint64_t>(key, value);
    } else if (key == "congestion.grid") {
        cfg.congestion_grid = parse_number<int>(key, value);
    } else if (key == "stretch.samples") {
        cfg.stretch_samples = parse_number<std::uint64_t>(key, value);
    } else if (key == "stretch.route_messages") {
        cfg.stretch_route_messages = parse_number<std::uint64_t>(key, value);
    } else if (key == "symmetry.nodes") {
        cfg.symmetry_nodes = parse_number<std::uint32_t>(key, value);
    } else if (key == "symmetry.range") {
        cfg.symmetry_range = parse_number<double>(key, value);
    } else if (key == "symmetry.regions") {
        cfg.symmetry_regions = parse_number<int>(key, value);
    } else if (key == "symmetry.paths") {
        cfg.symmetry_paths = parse_number<std::uint64_t>(key, value);
    } else if (key == "symmetry.deployments") {
        cfg.symmetry_deployments = parse_number<std::uint32_t>(key, value);
    } else if (key == "output.path") {
        cfg.out_path = value;
    } else if (key == "output.format") {
        if (value == "json") {
            cfg.format = OutputFormat::Json;
        } else if (value == "csv") {
            cfg.format = OutputFormat::Csv;
        } else {
            throw ConfigError("output.format: expected json|csv, got '" + value + "'");
        }
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

std::vector<std::pair<std::string, std::string>> parse_config_lines(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        if (!seen.insert(key).second) {
            throw ConfigError("config: duplicate key '" + key + "'");
        }
        entries.emplace_back(std::move(key), std::move(value));
    }
    return entries;
}

void validate_config(RunConfig& cfg, bool messages_explicit) {
    // Lifetime runs need a long stream to position the stop condition inside
    // it; the default materializes here when the user did not choose one.
    const bool lifetime = cfg.command == Command::LifetimeFirstDeath ||
                          cfg.command == Command::LifetimeThreshold;
    if (!messages_explicit && lifetime) {
        cfg.traffic.message_count = 1'000'000;
    }

    if (cfg.seeds.empty()) {
        throw ConfigError(
            "run.seeds: at least one explicit seed is required (no wall-clock default)");
    }
    std::set<std::uint64_t> unique_seeds(cfg.seeds.begin(), cfg.seeds.end());
    if (unique_seeds.size() != cfg.seeds.size()) {
        throw ConfigError("run.seeds: duplicate seed (per-seed reports would collide)");
    }
    if (cfg.network.mode == DeployMode::Fixed && cfg.network.node_count < 2) {
        throw ConfigError("network.nodes: at least 2 nodes required");
    }
    if (cfg.network.mode == DeployMode::Poisson && !(cfg.network.density >= 2.0)) {
        throw ConfigError("network.density: expected node count must be >= 2");
    }
    if (!(cfg.network.range > 0.0)) {
        throw ConfigError("network.range: must be > 0");
    }
    if (cfg.network.initial_battery < 1) {
        throw ConfigError("network.battery: must be >= 1");
    }
    if (cfg.traffic.message_count < 1) {
        throw ConfigError("traffic.messages: must be >= 1");
    }
    if (!(cfg.threshold > 0.0 && cfg.threshold <= 1.0)) {
        throw ConfigError("run.threshold: must be in (0, 1]");
    }
    if (cfg.window < 1) {
        throw ConfigError("run.window: must be >= 1");
    }
    if (cfg.congestion_grid < 1) {
        throw ConfigError("congestion.grid: must be >= 1");
    }
    if (cfg.stretch_samples < 100000) {
        throw ConfigError("stretch.samples: sample count must be >= 100000");
    }
    if (cfg.symmetry_nodes < 2) {
        throw ConfigError("symmetry.nodes: at least 2 nodes required");
    }
    if (cfg.symmetry_regions < 1) {
        throw ConfigError("symmetry.regions: must be >= 1");
    }
    if (cfg.symmetry_paths < 1) {
        throw ConfigError("symmetry.paths: must be >= 1");
    }
    if (cfg.symmetry_deployments < 1) {
        throw ConfigError("symmetry.deployments: must be >= 1");
    }
    if (cfg.symmetry_paths < cfg.symmetry_deployments) {
        throw ConfigError("symmetry.paths: need at least one path per deployment");
    }
    if (cfg.symmetry_range < 0.0) {
        throw ConfigError("symmetry.range: must be >= 0 (0 = per-surface default)");
    }
    if (cfg.out_path.empty()) {
        cfg.out_path = std::string("out/") + command_name(cfg.command);
    }
}

json resolved_config_json(const RunConfig& cfg) {
    json net{
        {"mode", cfg.network.mode == DeployMode::Fixed ? "fixed" : "poisson"},
        {"range", cfg.network.range},
        {"battery", cfg.network.initial_battery},
    };
    if (cfg.network.mode == DeployMode::Fixed) {
        net["nodes"] = cfg.network.node_count;
    } else {
        net["density"] = cfg.network.density;
    }
    const char* protocol = cfg.protocol == ProtocolSelection::Geographic ? "geo"
                           : cfg.protocol == ProtocolSelection::Outer    ? "outer"
                                                                         : "both";
    return json{
        {"command", command_name(cfg.command)},
        {"network", std::move(net)},
        {"traffic", {{"messages", cfg.traffic.message_count}}},
        {"run",
         {{"seeds", cfg.seeds},
          {"protocol", protocol},
          {"threshold", cfg.threshold},
          {"window", cfg.window}}},
        {"congestion", {{"grid", cfg.congestion_grid}}},
        {"stretch",
         {{"samples", cfg.stretch_samples}, {"route_messages", cfg.stretch_route_messages}}},
        {"symmetry",
         {{"nodes", cfg.symmetry_nodes},
          {"range", cfg.symmetry_range},
          {"regions", cfg.symmetry_regions},
          {"paths", cfg.symmetry_paths},
          {"deployments", cfg.symmetry_deployments}}},
        {"output",
         {{"path", cfg.out_path},
          {"format", cfg.format == OutputFormat::Json ? "json" : "csv"}}},
    };
}

}  // namespace

RunConfig parse_config(std::optional<std::string_view> config_text, const FlagOverrides& flags,
                       std::ostream& diagnostics) {
    RunConfig cfg;
    std::set<std::string> file_keys;
    bool command_set = false;
    bool messages_explicit = false;

    if (config_text) {
        for (const auto& [key, value] : parse_config_lines(*config_text)) {
            apply_entry(cfg, key, value);
            file_keys.insert(key);
            if (key == "command") command_set = true;
            if (key == "traffic.messages") messages_explicit = true;
        }
    }
    for (const auto& [key, value] : flags) {
        if (file_keys.count(key) > 0) {
            diagnostics << "note: flag overrides config file value for '" << key << "'\n";
        }
        apply_entry(cfg, key, value);
        if (key == "command") command_set = true;
        if (key == "traffic.messages") messages_explicit = true;
    }
    if (!command_set) {
        throw ConfigError("command: required (generate|route|congestion|energy|"
                          "lifetime-first-death|lifetime-threshold|stretch|symmetry|validate)");
    }
    validate_config(cfg, messages_explicit);
    return cfg;
}

RunConfig parse_config_file(const std::string& path, const FlagOverrides& flags,
                            std::ostream& diagnostics) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("config file '" + path + "' does not exist or is unreadable");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    return parse_config(std::string_view(text), flags, diagnostics);
}

namespace {

struct SeedOutcome {
    std::uint64_t seed = 0;
    bool failed = false;
    std::string error;
    json results;
    std::vector<std::pair<std::string, std::string>> files;  // (path, content)
    std::map<std::string, double> scalars;
    std::vector<std::string> log_lines;
};

NetworkConfig network_for_seed(const RunConfig& cfg, std::uint64_t seed) {
    NetworkConfig net = cfg.network;
    net.seed = derive_seed(seed, kNetSeedDomain);
    return net;
}

TrafficConfig traffic_for_seed(const RunConfig& cfg, std::uint64_t seed) {
    return TrafficConfig{cfg.traffic.message_count, derive_seed(seed, kTrafficSeedDomain)};
}

std::vector<Protocol> selected_protocols(ProtocolSelection sel) {
    switch (sel) {
        case ProtocolSelection::Geographic: return {Protocol::Geographic};
        case ProtocolSelection::Outer: return {Protocol::OuterSpace};
        case ProtocolSelection::Both: return {Protocol::Geographic, Protocol::OuterSpace};
    }
    return {};
}

std::string seed_base(const RunConfig& cfg, std::uint64_t seed) {
    return cfg.out_path + "-seed" + std::to_string(seed);
}

// Concatenates per-report CSV tables that share a header row.
void append_table(std::string& csv, const std::string& table) {
    if (csv.empty()) {
        csv = table;
        return;
    }
    const std::size_t header_end = table.find('\n');
    csv.append(table, header_end + 1, std::string::npos);
}

std::string round4(double v) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(4);
    out << v;
    return out.str();
}

void run_generate(const RunConfig& cfg, std::uint64_t seed, SeedOutcome& out) {
    const Network net = Network::generate(network_for_seed(cfg, seed));
    out.files.emplace_back(seed_base(cfg, seed) + "-network.json", network_to_json(net));
    out.results = json{{"node_count", net.size()}, {"mean_degree", net.mean_degree()}};
    out.scalars["node_count"] = static_cast<double>(net.size());
    out.scalars["mean_degree"] = net.mean_degree();
    out.log_lines.push_back("nodes " + std::to_string(net.size()) + ", mean degree " +
                            round4(net.mean_degree()));
}

void run_route(const RunConfig& cfg, std::uint64_t seed, SeedOutcome& out) {
    const NetworkConfig net_cfg = network_for_seed(cfg, seed);
    const TrafficConfig traffic_cfg = traffic_for_seed(cfg, seed);
    Network base = Network::generate(net_cfg);
    const auto pairs = generate_traffic(base, traffic_cfg);

    std::vector<TraceEntry> trace;
    json summary = json::object();
    for (Protocol protocol : selected_protocols(cfg.protocol)) {
        Network net = base;
        net.set_all_batteries(kEffectivelyInfiniteBattery);
        Rng image_rng = image_stream(traffic_cfg);
        std::uint64_t delivered = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& [src, dst] = pairs[i];
            const Message msg = protocol == Protocol::Geographic
                                    ? make_geographic_message(net, src, dst)
                                    : make_outer_space_message(net, src, dst, image_rng);
            TraceEntry entry;
            entry.msg_id = i;
            entry.protocol = protocol;
            entry.src = src;
            entry.dst = dst;
            entry.outcome = route(net, RouteRequest{protocol, msg});
            delivered += entry.outcome.delivered() ? 1 : 0;
            trace.push_back(std::move(entry));
        }
        const double fraction =
            static_cast<double>(delivered) / static_cast<double>(pairs.size());
        summary[protocol_name(protocol)] = {
            {"delivered", delivered},
            {"delivered_fraction", fraction},
            {"transmissions", net.total_transmissions()},
        };
        out.scalars[std::string(protocol_name(protocol)) + ".delivered_fraction"] = fraction;
        out.log_lines.push_back(std::string(protocol_name(protocol)) + " delivered " +
                                round4(fraction * 100.0) + "% of " +
                                std::to_string(pairs.size()) + " messages");
    }
    out.files.emplace_back(seed_base(cfg, seed) + "-trace.csv", route_trace_csv(trace));
    summary["traffic_digest"] = traffic_digest(pairs);
    out.results = std::move(summary);
}

void run_congestion_cmd(const RunConfig& cfg, std::uint64_t seed, SeedOutcome& out) {
    const NetworkConfig net_cfg = network_for_seed(cfg, seed);
    const TrafficConfig traffic_cfg = traffic_for_seed(cfg, seed);
    out.results = json::object();
    std::string csv;
    for (Protocol protocol : selected_protocols(cfg.protocol)) {
        const CongestionReport report =
            run_congestion(Network::generate(net_cfg), traffic_cfg, protocol,
                           default_sub_areas(), cfg.congestion_grid);
        const std::string name = protocol_name(protocol);
        out.results[name] = detail::to_json(report);
        for (std::size_t a = 0; a < report.area_fractions.size(); ++a) {
            out.scalars[name + ".area" + std::to_string(a) + "_fraction"] =
                report.area_fractions[a];
        }
        out.scalars[name + ".central_fraction"] = report.central_fraction();
        out.scalars[name + ".delivered_fraction"] =
            static_cast<double>(report.delivered_count) /
            static_cast<double>(report.message_count);
        if (cfg.format == OutputFormat::Csv) {
            append_table(csv, congestion_csv(report));
            out.files.emplace_back(seed_base(cfg, seed) + "-heatmap-" + name + ".csv",
                                   heatmap_csv(report));
        }
        out.log_lines.push_back(name + " central fraction " +
                                round4(report.central_fraction()));
    }
    if (cfg.format == OutputFormat::Csv) {
        out.files.emplace_back(seed_base(cfg, seed) + ".csv", csv);
    }
}

void run_energy_cmd(const RunConfig& cfg, std::uint64_t seed, SeedOutcome& out) {
    const EnergyReport report = run_energy(Network::generate(network_for_seed(cfg, seed)),
                                           traffic_for_seed(cfg, seed));
    out.results = detail::to_json(report);
    out.scalars["energy_ratio"] = report.ratio;
    out.scalars["geographic_transmissions"] =
        static_cast<double>(report.geographic_transmissions);
    out.scalars["outer_transmissions"] = static_cast<double>(report.outer_transmissions);
    if (cfg.format == OutputFormat::Csv) {
        out.files.emplace_back(seed_base(cfg, seed) + ".csv", energy_csv(report));
    }
    out.log_lines.push_back("energy ratio " + round4(report.ratio));
}

void run_lifetime_cmd(const RunConfig& cfg, std::uint64_t seed, SeedOutcome& out) {
    const NetworkConfig net_cfg = network_for_seed(cfg, seed);
    const TrafficConfig traffic_cfg = traffic_for_seed(cfg, seed);
    const LifetimePair pair =
        cfg.command == Command::LifetimeFirstDeath
            ? run_lifetime_first_death(net_cfg, traffic_cfg)
            : run_lifetime_delivery_threshold(net_cfg, traffic_cfg, cfg.threshold, cfg.window);
    out.results = detail::to_json(pair);
    out.scalars["geographic_delivered"] =
        static_cast<double>(pair.geographic.messages_delivered);
    out.scalars["outer_delivered"] = static_cast<double>(pair.outer.messages_delivered);
    out.scalars["delivered_ratio"] = pair.delivered_ratio;
    if (cfg.format == OutputFormat::Csv) {
        out.files.emplace_back(seed_base(cfg, seed) + ".csv", lifetime_csv(pair));
    }
    out.log_lines.push_back("delivered geo " +
                            std::to_string(pair.geographic.messages_delivered) + ", outer " +
                            std::to_string(pair.outer.messages_delivered) + ", ratio " +
                            round4(pair.delivered_ratio));
}

void run_stretch_cmd(const RunConfig& cfg, std::uint64_t seed, SeedOutcome& out) {
    StretchConfig stretch_cfg;
    stretch_cfg.samples = cfg.stretch_samples;
    stretch_cfg.seed = derive_seed(seed, kStretchSeedDomain);
    stretch_cfg.with_routing = true;
    stretch_cfg.network = network_for_seed(cfg, seed);
    stretch_cfg.route_messages = cfg.stretch_route_messages;
    const StretchReport report = run_stretch(stretch_cfg);
    out.results = detail::to_json(report);
    out.scalars["mean_square_distance"] = report.mean_square_distance;
    out.scalars["mean_torus_distance"] = report.mean_torus_distance;
    out.scalars["distance_ratio"] = report.distance_ratio;
    out.scalars["hop_ratio"] = report.hop_ratio;
    if (cfg.format == OutputFormat::Csv) {
        out.files.emplace_back(seed_base(cfg, seed) + ".csv", stretch_csv(report));
    }
    out.log_lines.push_back("distance ratio " + round4(report.distance_ratio) +
                            ", hop ratio " + round4(report.hop_ratio));
}

void run_symmetry_cmd(const RunConfig& cfg, std::uint64_t seed, SeedOutcome& out) {
    out.results = json::object();
    std::string csv;
    for (Surface surface : {Surface::Torus, Surface::Square}) {
        SymmetryConfig sym_cfg;
        sym_cfg.surface = surface;
        sym_cfg.node_count = cfg.symmetry_nodes;
        sym_cfg.range = cfg.symmetry_range;
        sym_cfg.path_count = cfg.symmetry_paths;
        sym_cfg.regions = cfg.symmetry_regions;
        sym_cfg.deployments = cfg.symmetry_deployments;
        sym_cfg.seed = derive_seed(seed, kSymmetrySeedDomain);
        const SymmetryReport report = run_symmetry_check(sym_cfg);
        out.results[surface_name(surface)] = detail::to_json(report);
        out.scalars[std::string(surface_name(surface)) + ".max_min_ratio"] =
            report.max_min_ratio;
        out.scalars[std::string(surface_name(surface)) + ".center_corner_ratio"] =
            report.center_corner_ratio;
        if (cfg.format == OutputFormat::Csv) append_table(csv, symmetry_csv(report));
        out.log_lines.push_back(std::string(surface_name(surface)) + " max/min " +
                                round4(report.max_min_ratio) + ", center/corner " +
                                round4(report.center_corner_ratio));
    }
    if (cfg.format == OutputFormat::Csv) {
        out.files.emplace_back(seed_base(cfg, seed) + ".csv", csv);
    }
}

void run_validate_cmd(const RunConfig&, std::uint64_t seed, SeedOutcome& out) {
    const auto checks = run_validation_suite(derive_seed(seed, kValidateSeedDomain));
    json list = json::array();
    std::size_t passed = 0;
    for (const CheckResult& check : checks) {
        list.push_back(
            {{"name", check.name}, {"passed", check.passed}, {"details", check.details}});
        passed += check.passed ? 1 : 0;
        out.log_lines.push_back(std::string(check.passed ? "PASS  " : "FAIL  ") + check.name +
                                "  (" + check.details + ")");
    }
    out.results = json{{"checks", std::move(list)},
                       {"passed", passed},
                       {"total", checks.size()}};
    out.scalars["checks_passed"] = static_cast<double>(passed);
    out.scalars["checks_total"] = static_cast<double>(checks.size());
    if (passed != checks.size()) {
        out.failed = true;
        out.error = std::to_string(checks.size() - passed) + " validation checks failed";
    }
}

SeedOutcome run_seed(const RunConfig& cfg, std::uint64_t seed) {
    SeedOutcome out;
    out.seed = seed;
    try {
        switch (cfg.command) {
            case Command::Generate: run_generate(cfg, seed, out); break;
            case Command::Route: run_route(cfg, seed, out); break;
            case Command::Congestion: run_congestion_cmd(cfg, seed, out); break;
            case Command::Energy: run_energy_cmd(cfg, seed, out); break;
            case Command::LifetimeFirstDeath:
            case Command::LifetimeThreshold: run_lifetime_cmd(cfg, seed, out); break;
            case Command::Stretch: run_stretch_cmd(cfg, seed, out); break;
            case Command::Symmetry: run_symmetry_cmd(cfg, seed, out); break;
            case Command::Validate: run_validate_cmd(cfg, seed, out); break;
        }
    } catch (const std::exception& e) {
        out.failed = true;
        out.error = e.what();
    }
    return out;
}

std::size_t resolve_worker_count(std::size_t jobs, std::ostream& log) {
    std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("OUTERSPACE_THREADS")) {
        std::size_t parsed = 0;
        const auto [ptr, ec] = std::from_chars(env, env + std::string_view(env).size(), parsed);
        if (ec == std::errc{} && *ptr == '\0' && parsed >= 1) {
            cap = parsed;
        } else {
            log << "note: ignoring unparsable OUTERSPACE_THREADS='" << env << "'\n";
        }
    }
    return std::min(cap, jobs);
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& log) {
    const json config_echo = resolved_config_json(cfg);
    std::vector<SeedOutcome> outcomes(cfg.seeds.size());

    const std::size_t workers = resolve_worker_count(cfg.seeds.size(), log);
    std::atomic<std::size_t> next{0};
    auto pull = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.seeds.size()) return;
            outcomes[i] = run_seed(cfg, cfg.seeds[i]);
        }
    };
    if (workers <= 1) {
        pull();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(pull);
        for (std::thread& t : pool) t.join();
    }

    // Single collector: outputs written sequentially in seed order.
    bool any_failed = false;
    std::map<std::string, std::vector<double>> series;
    for (const SeedOutcome& out : outcomes) {
        for (const std::string& line : out.log_lines) {
            log << "[seed " << out.seed << "] " << line << '\n';
        }
        if (out.failed) {
            any_failed = true;
            log << "[seed " << out.seed << "] ERROR: " << out.error << '\n';
            if (out.results.is_null()) continue;
        }
        json doc{
            {"command", command_name(cfg.command)},
            {"config", config_echo},
            {"seed", out.seed},
            {"results", out.results},
        };
        write_file(seed_base(cfg, out.seed) + ".json", doc.dump(2) + "\n");
        for (const auto& [path, content] : out.files) {
            write_file(path, content);
        }
        for (const auto& [name, value] : out.scalars) {
            series[name].push_back(value);
        }
    }

    json aggregate = json::object();
    std::string aggregate_csv = "metric,mean,stddev,seeds\n";
    for (const auto& [name, values] : series) {
        double sum = 0.0;
        for (double v : values) sum += v;
        const double mean = sum / static_cast<double>(values.size());
        double var = 0.0;
        if (values.size() > 1) {
            for (double v : values) var += (v - mean) * (v - mean);
            var /= static_cast<double>(values.size() - 1);
        }
        const double stddev = std::sqrt(var);
        aggregate[name] = {{"mean", mean}, {"stddev", stddev}, {"values", values}};
        aggregate_csv += name + ',' + format_double(mean) + ',' + format_double(stddev) + ',' +
                         std::to_string(values.size()) + '\n';
        log << "aggregate " << name << ": mean " << round4(mean) << ", stddev "
            << round4(stddev) << '\n';
    }
    json agg_doc{
        {"command", command_name(cfg.command)},
        {"config", config_echo},
        {"seeds", cfg.seeds},
        {"aggregate", std::move(aggregate)},
    };
    write_file(cfg.out_path + "-aggregate.json", agg_doc.dump(2) + "\n");
    if (cfg.format == OutputFormat::Csv) {
        write_file(cfg.out_path + "-aggregate.csv", aggregate_csv);
    }
    return any_failed ? 1 : 0;
}

}  // namespace outerspace
