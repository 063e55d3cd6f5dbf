#pragma once

#include "clusterbench/error.hpp"
#include "clusterbench/model.hpp"
#include "clusterbench/table.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace clusterbench {

inline constexpr std::string_view kToolName = "clusterbench";
inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kSeedEnvVar = "CLUSTERBENCH_SEED";

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitInput = 3,
    kExitDomain = 4,
};

int exit_code_for(ErrorKind kind) noexcept;

struct CommonOptions {
    std::optional<std::filesystem::path> config_path;
    std::optional<std::filesystem::path> manifest_path; // replay: config and arguments come from here
    std::optional<std::uint64_t> seed;
    std::optional<Comparator> comparator;
    std::optional<ValidationScope> scope;
    std::optional<std::filesystem::path> out_dir; // "." when unset; validate only writes when set
    Format format = Format::Csv;
    unsigned threads = 1;
};

/// Config resolution: defaults < config file (or manifest) < flags.
/// Seed precedence: --seed > config "seed" > CLUSTERBENCH_SEED > default.
ScenarioConfig resolve_config(const CommonOptions& options);

/// Manifest written next to every output set. `extra` is merged in as-is.
nlohmann::ordered_json make_manifest(std::string_view command, const ScenarioConfig& config,
                                     const nlohmann::ordered_json& extra = {});

struct SweepOptions {
    std::vector<std::uint32_t> node_counts = {25, 50, 300};
    std::uint32_t seeds = 20;
};

struct SweepPoint {
    std::uint32_t node_count = 0;
    double median_index = 0.0;
    std::vector<double> indices; // one per seed, seed order
};

/// Tick-0 Dunn index for seeds base..base+seeds-1 at every node count.
std::vector<SweepPoint> run_sweep(const ScenarioConfig& base, const SweepOptions& sweep, unsigned threads = 1);

double median(std::vector<double> values);

// Each command writes its outputs plus manifest.json into options.out_dir and
// returns an exit code; errors are reported on `err`.
int cmd_generate(const CommonOptions& options, std::ostream& out, std::ostream& err);
int cmd_cluster(const CommonOptions& options, const std::filesystem::path& nodes_path, std::ostream& out,
                std::ostream& err);
int cmd_validate(const CommonOptions& options, const std::filesystem::path& clusters_path, bool strict,
                 std::ostream& out, std::ostream& err);
int cmd_simulate(const CommonOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommonOptions& options, const SweepOptions& sweep, std::ostream& out, std::ostream& err);

/// Full command line front end (argv[0] is the program name).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace clusterbench
