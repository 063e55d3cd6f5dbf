#include "clusterbench/commands.hpp"

#include "CLI11.hpp"

#include <ostream>
#include <string>

namespace clusterbench {

namespace {

struct RawOptions {
    std::string config;
    std::string manifest;
    std::optional<std::uint64_t> seed;
    std::string comparator;
    std::string scope;
    std::string out;
    std::string format = "csv";
    unsigned threads = 1;
};

void add_common(CLI::App* cmd, RawOptions& raw)
{
    cmd->add_option("--config", raw.config, "Scenario config file (JSON)");
    cmd->add_option("--manifest", raw.manifest, "Replay the config recorded in a run manifest");
    cmd->add_option("--seed", raw.seed, "RNG seed (overrides config and $CLUSTERBENCH_SEED)");
    cmd->add_option("--out", raw.out, "Output directory");
    cmd->add_option("--format", raw.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--comparator", raw.comparator, "Membership predicate")
        ->check(CLI::IsMember({"below", "at-or-above", "at_or_above"}));
    cmd->add_option("--scope", raw.scope, "Validation scope")->check(CLI::IsMember({"admitted", "partition"}));
    cmd->add_option("--threads", raw.threads, "Worker threads")->check(CLI::Range(1U, 256U));
}

CommonOptions to_options(const RawOptions& raw)
{
    CommonOptions o;
    if (!raw.config.empty()) {
        o.config_path = raw.config;
    }
    if (!raw.manifest.empty()) {
        o.manifest_path = raw.manifest;
    }
    o.seed = raw.seed;
    if (!raw.comparator.empty()) {
        o.comparator = parse_comparator(raw.comparator);
    }
    if (!raw.scope.empty()) {
        o.scope = parse_validation_scope(raw.scope);
    }
    if (!raw.out.empty()) {
        o.out_dir = raw.out;
    }
    o.format = parse_format(raw.format);
    o.threads = raw.threads;
    return o;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Energy-aware clustering simulator for ad hoc networks", std::string(kToolName)};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    RawOptions raw;
    std::string nodes_path;
    std::string clusters_path;
    bool strict = false;
    std::vector<std::uint32_t> sweep_nodes = {25, 50, 300};
    std::uint32_t sweep_seeds = 20;

    auto* generate = app.add_subcommand("generate", "Place nodes and write the node table");
    add_common(generate, raw);

    auto* cluster = app.add_subcommand("cluster", "Form clusters, elect heads and assign addresses for a node table");
    add_common(cluster, raw);
    cluster->add_option("--nodes", nodes_path, "Node table (CSV or JSON)")->required();

    auto* validate = app.add_subcommand("validate", "Compute the Dunn's index report for a cluster table");
    add_common(validate, raw);
    validate->add_option("--clusters", clusters_path, "Cluster table (CSV or JSON)")->required();
    validate->add_flag("--strict", strict, "Exit 4 when the index is undefined or degenerate");

    auto* simulate = app.add_subcommand("simulate", "Run the tick-based simulation");
    add_common(simulate, raw);

    auto* sweep = app.add_subcommand("sweep", "Median Dunn's index across node counts and seeds");
    add_common(sweep, raw);
    sweep->add_option("--node-counts", sweep_nodes, "Node counts to sweep")->delimiter(',');
    sweep->add_option("--seeds", sweep_seeds, "Seeds per node count")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    CommonOptions options;
    try {
        options = to_options(raw);
    } catch (const Error& e) {
        err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
        return exit_code_for(e.kind());
    }

    if (generate->parsed()) {
        return cmd_generate(options, out, err);
    }
    if (cluster->parsed()) {
        return cmd_cluster(options, nodes_path, out, err);
    }
    if (validate->parsed()) {
        return cmd_validate(options, clusters_path, strict, out, err);
    }
    if (simulate->parsed()) {
        return cmd_simulate(options, out, err);
    }
    return cmd_sweep(options, SweepOptions{sweep_nodes, sweep_seeds}, out, err);
}

} // namespace clusterbench
