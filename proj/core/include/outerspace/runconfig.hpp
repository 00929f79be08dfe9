#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "outerspace/experiments.hpp"

namespace outerspace {

enum class Command {
    Generate,
    Route,
    Congestion,
    Energy,
    LifetimeFirstDeath,
    LifetimeThreshold,
    Stretch,
    Symmetry,
    Validate,
};

const char* command_name(Command c);

enum class ProtocolSelection { Geographic, Outer, Both };
enum class OutputFormat { Json, Csv };

/// Fully resolved run description: every default materialized, every seed
/// explicit. Echoed verbatim into each emitted report.
struct RunConfig {
    Command command = Command::Validate;
    NetworkConfig network;  // per-run seed is derived from the run seed
    TrafficConfig traffic;
    ProtocolSelection protocol = ProtocolSelection::Both;
    double threshold = 0.95;
    std::uint64_t window = 1000;
    int congestion_grid = 30;
    std::uint64_t stretch_samples = 1'000'000;
    std::uint64_t stretch_route_messages = 20000;
    std::uint32_t symmetry_nodes = 1000;
    double symmetry_range = 0.0;  // 0 = per-surface default
    int symmetry_regions = 4;
    std::uint64_t symmetry_paths = 100000;
    std::uint32_t symmetry_deployments = 5;
    std::vector<std::uint64_t> seeds;
    std::string out_path;
    OutputFormat format = OutputFormat::Json;
};

/// Ordered (key, value) overrides, already in config-file key syntax. The
/// CLI front end maps flags onto these.
using FlagOverrides = std::vector<std::pair<std::string, std::string>>;

/// Raised for malformed configs; the message names the offending key.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses the flat key-value config format (lines of `section.key = value`,
/// '#' comments) merged with flag overrides. Flags win over file values;
/// each shadowed file value is noted on the diagnostics stream. Unknown
/// keys, out-of-range values, and a missing seed list are errors.
RunConfig parse_config(std::optional<std::string_view> config_text, const FlagOverrides& flags,
                       std::ostream& diagnostics);

/// Reads the file and delegates to parse_config.
RunConfig parse_config_file(const std::string& path, const FlagOverrides& flags,
                            std::ostream& diagnostics);

/// Runs the selected command over all seeds (seed-level parallelism capped
/// by OUTERSPACE_THREADS), writes one report per seed plus an aggregate
/// (mean and sample stddev over seeds), and returns the process exit code.
/// Failures leave the successful seeds' outputs on disk.
int execute(const RunConfig& cfg, std::ostream& log);

}  // namespace outerspace
