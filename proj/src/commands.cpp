#include "clusterbench/commands.hpp"

#include "clusterbench/addressing.hpp"
#include "clusterbench/clustering.hpp"
#include "clusterbench/config.hpp"
#include "clusterbench/head_election.hpp"
#include "clusterbench/parallel.hpp"
#include "clusterbench/records.hpp"
#include "clusterbench/sim.hpp"
#include "clusterbench/validation.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

namespace clusterbench {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

int exit_code_for(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Config: return kExitConfig;
    case ErrorKind::Input:
    case ErrorKind::Io: return kExitInput;
    default: return kExitDomain;
    }
}

namespace {

std::optional<std::uint64_t> env_seed()
{
    const char* raw = std::getenv(kSeedEnvVar.data());
    if (raw == nullptr || *raw == '\0') {
        return std::nullopt;
    }
    const std::string_view text(raw);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        fail(ErrorKind::Config, std::string(kSeedEnvVar) + ": expected an unsigned 64-bit integer, got '" +
                                    std::string(text) + "'");
    }
    return value;
}

std::string timestamp_utc()
{
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"); sde != nullptr && *sde != '\0') {
        t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json read_manifest(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::Config, "cannot read manifest " + path.string());
    }
    try {
        return ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        fail(ErrorKind::Config, "manifest " + path.string() + " is not valid JSON: " + e.what());
    }
}

fs::path prepare_out_dir(const CommonOptions& options)
{
    const fs::path dir = options.out_dir.value_or(".");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        fail(ErrorKind::Io, "cannot create output directory " + dir.string() + ": " + ec.message());
    }
    return dir;
}

fs::path output_file(const fs::path& dir, std::string_view stem, Format format)
{
    return dir / (std::string(stem) + std::string(extension(format)));
}

void write_manifest(const fs::path& dir, const ordered_json& manifest)
{
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

template <typename Body>
int guarded(std::ostream& err, Body&& body)
{
    try {
        return body();
    } catch (const Error& e) {
        err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

ClusterSet cluster_and_elect(const ScenarioConfig& config, std::span<const Node> nodes, unsigned threads)
{
    const ClusterSet initial = expac_cluster(nodes, config.tx_range, threads);
    return psopac_rebuild(initial, EnergySnapshot::from_nodes(nodes), config.energy_threshold, config.comparator);
}

int compactness_level(Compactness c)
{
    switch (c) {
    case Compactness::High: return 2;
    case Compactness::Low: return 1;
    case Compactness::VeryLow: return 0;
    }
    return 0;
}

} // namespace

ScenarioConfig resolve_config(const CommonOptions& options)
{
    LoadedConfig loaded;
    if (options.manifest_path) {
        const auto manifest = read_manifest(*options.manifest_path);
        if (!manifest.contains("config")) {
            fail(ErrorKind::Config, "manifest " + options.manifest_path->string() + " has no config section");
        }
        loaded = config_from_json(nlohmann::json::parse(manifest.at("config").dump()));
    } else if (options.config_path) {
        loaded = load_config_file(*options.config_path);
    }
    ScenarioConfig config = loaded.config;
    if (options.seed) {
        config.seed = *options.seed;
    } else if (!loaded.seed_given) {
        if (const auto s = env_seed()) {
            config.seed = *s;
        }
    }
    if (options.comparator) {
        config.comparator = *options.comparator;
    }
    if (options.scope) {
        config.validation_scope = *options.scope;
    }
    validate_config(config);
    return config;
}

ordered_json make_manifest(std::string_view command, const ScenarioConfig& config, const ordered_json& extra)
{
    ordered_json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["command"] = command;
    m["seed"] = config.seed;
    m["rng"] = kRngName;
    m["placement"] = kPlacementName;
    m["comparator"] = to_string(config.comparator);
    m["validation_scope"] = to_string(config.validation_scope);
    m["config"] = ordered_json::parse(to_json(config).dump());
    for (const auto& [key, value] : extra.items()) {
        m[key] = value;
    }
    m["timestamp"] = timestamp_utc();
    return m;
}

double median(std::vector<double> values)
{
    if (values.empty()) {
        return std::nan("");
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    const double lo = values[mid - 1];
    const double hi = values[mid];
    if (std::isinf(lo) || std::isinf(hi)) {
        return std::isinf(lo) ? lo : hi;
    }
    return (lo + hi) / 2.0;
}

std::vector<SweepPoint> run_sweep(const ScenarioConfig& base, const SweepOptions& sweep, unsigned threads)
{
    if (sweep.node_counts.empty() || sweep.seeds == 0) {
        fail(ErrorKind::Config, "sweep needs at least one node count and one seed");
    }
    const std::size_t runs = sweep.node_counts.size() * sweep.seeds;
    std::vector<std::optional<double>> indices(runs);
    std::vector<std::optional<Error>> failures(runs);

    parallel_for(runs, threads, [&](std::size_t r) {
        ScenarioConfig config = base;
        config.node_count = sweep.node_counts[r / sweep.seeds];
        config.seed = base.seed + (r % sweep.seeds);
        try {
            const auto nodes = generate_scenario(config);
            const ClusterSet elected = cluster_and_elect(config, nodes, 1);
            if (elected.size() >= 2) {
                indices[r] = validate(elected, positions_of(nodes), config.validation_scope,
                                      config.dunn_recluster_threshold)
                                 .dunn_index;
            }
        } catch (const Error& e) {
            failures[r] = e;
        }
    });
    for (const auto& f : failures) {
        if (f) {
            throw *f;
        }
    }

    std::vector<SweepPoint> out;
    for (std::size_t n = 0; n < sweep.node_counts.size(); ++n) {
        SweepPoint p;
        p.node_count = sweep.node_counts[n];
        for (std::uint32_t s = 0; s < sweep.seeds; ++s) {
            if (const auto& v = indices[n * sweep.seeds + s]) {
                p.indices.push_back(*v);
            }
        }
        p.median_index = median(p.indices);
        out.push_back(std::move(p));
    }
    return out;
}

int cmd_generate(const CommonOptions& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ScenarioConfig config = resolve_config(options);
        const auto nodes = generate_scenario(config);
        const fs::path dir = prepare_out_dir(options);
        const fs::path file = output_file(dir, "nodes", options.format);
        write_table(file, records::node_table(nodes), options.format);
        write_manifest(dir, make_manifest("generate", config));
        out << "wrote " << nodes.size() << " nodes to " << file.string() << '\n';
        return kExitOk;
    });
}

int cmd_cluster(const CommonOptions& options, const fs::path& nodes_path, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ScenarioConfig config = resolve_config(options);
        const auto nodes = records::nodes_from_table(read_table(nodes_path));
        const auto positions = positions_of(nodes);
        const auto energies = EnergySnapshot::from_nodes(nodes);
        const ClusterSet elected = cluster_and_elect(config, nodes, options.threads);
        const AddressAssignment assignment = assign_addresses(elected, config.address_prefix);

        const fs::path dir = prepare_out_dir(options);
        const Format f = options.format;
        write_table(output_file(dir, "clusters", f), records::cluster_table(elected, energies, positions), f);
        fs::create_directories(dir / "energy_graph");
        for (const Cluster& c : elected.clusters) {
            write_table(output_file(dir / "energy_graph", "cluster_" + std::to_string(c.cluster_id), f),
                        records::energy_graph_table(c, energies), f);
        }
        write_table(output_file(dir, "addresses", f), records::address_table(elected, assignment), f);
        write_table(output_file(dir, "trace", f), records::trace_table(assignment.trace), f);

        ordered_json extra;
        extra["inputs"] = {{"nodes", nodes_path.string()}};
        if (elected.size() >= 2) {
            const auto report = validate(elected, positions, config.validation_scope, config.dunn_recluster_threshold,
                                         options.threads);
            Table t = records::report_table();
            records::add_report_row(t, nodes.size(), report);
            write_table(output_file(dir, "report", f), t, f);
        }
        write_manifest(dir, make_manifest("cluster", config, extra));
        out << "formed " << elected.size() << " clusters over " << nodes.size() << " nodes in " << dir.string()
            << '\n';
        return kExitOk;
    });
}

int cmd_validate(const CommonOptions& options, const fs::path& clusters_path, bool strict, std::ostream& out,
                 std::ostream& err)
{
    return guarded(err, [&] {
        const ScenarioConfig config = resolve_config(options);
        const auto loaded = records::clusters_from_table(read_table(clusters_path));
        const std::size_t n = loaded.clusters.node_universe;

        Table t = records::report_table();
        try {
            const auto report = validate(loaded.clusters, loaded.positions, config.validation_scope,
                                         config.dunn_recluster_threshold, options.threads);
            records::add_report_row(t, n, report);
            out << t.to_csv();
            if (report.note) {
                out << "# note: " << *report.note << '\n';
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::UndefinedIndex && e.kind() != ErrorKind::DegenerateGeometry) {
                throw;
            }
            const std::string label(to_string(e.kind()));
            out << t.to_csv() << n << ',' << label << '\n';
            if (strict) {
                err << "error [" << label << "]: " << e.what() << '\n';
                return kExitDomain;
            }
            return kExitOk;
        }
        if (options.out_dir) {
            const fs::path dir = prepare_out_dir(options);
            write_table(output_file(dir, "report", options.format), t, options.format);
            ordered_json extra;
            extra["inputs"] = {{"clusters", clusters_path.string()}};
            write_manifest(dir, make_manifest("validate", config, extra));
        }
        return kExitOk;
    });
}

int cmd_simulate(const CommonOptions& options, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ScenarioConfig config = resolve_config(options);
        const Simulation sim = run_simulation(config, options.threads);

        const fs::path dir = prepare_out_dir(options);
        const Format f = options.format;
        write_table(output_file(dir, "nodes", f), records::node_table(sim.nodes), f);
        write_table(output_file(dir, "timeline", f), records::timeline_table(sim), f);
        write_table(output_file(dir, "reports", f), records::report_timeline_table(sim), f);
        write_table(output_file(dir, "events", f), records::events_table(sim), f);
        write_table(output_file(dir, "trace", f), records::simulation_trace_table(sim), f);

        const SimSnapshot* last_assigned = nullptr;
        for (const SimSnapshot& s : sim.snapshots) {
            if (s.assignment) {
                last_assigned = &s;
            }
        }
        write_table(output_file(dir, "addresses", f),
                    records::address_table(last_assigned->clusters, *last_assigned->assignment), f);
        write_manifest(dir, make_manifest("simulate", config));

        std::size_t head_changes = 0;
        std::size_t reclusters = 0;
        for (const SimSnapshot& s : sim.snapshots) {
            for (const SimEvent& ev : s.events) {
                head_changes += std::holds_alternative<HeadChange>(ev);
                reclusters += std::holds_alternative<ReclusterEvent>(ev);
            }
        }
        out << "simulated " << sim.snapshots.size() << " snapshots, " << head_changes << " head changes, "
            << reclusters << " re-clusterings; outputs in " << dir.string() << '\n';
        return kExitOk;
    });
}

int cmd_sweep(const CommonOptions& options, const SweepOptions& sweep_in, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ScenarioConfig config = resolve_config(options);
        SweepOptions sweep = sweep_in;
        if (options.manifest_path) {
            const auto manifest = read_manifest(*options.manifest_path);
            if (manifest.contains("sweep")) {
                sweep.node_counts = manifest.at("sweep").at("node_counts").get<std::vector<std::uint32_t>>();
                sweep.seeds = manifest.at("sweep").at("seeds").get<std::uint32_t>();
            }
        }
        const auto points = run_sweep(config, sweep, options.threads);

        const fs::path dir = prepare_out_dir(options);
        const Format f = options.format;
        Table runs{{"num_nodes", "seed", "dunn_index"}, {}};
        Table summary = records::report_table();
        summary.columns.insert(summary.columns.begin() + 1, "runs");
        std::string fig7 = "# num_nodes median_dunn_index\n";
        std::string fig8 = "# num_nodes separation_pct overlap_pct\n";
        std::string fig9 = "# num_nodes compactness_level (2=High 1=Low 0=VeryLow)\n";
        for (const SweepPoint& p : points) {
            for (std::size_t s = 0; s < p.indices.size(); ++s) {
                runs.rows.push_back({p.node_count, config.seed + s, p.indices[s]});
            }
            if (p.indices.empty()) {
                continue;
            }
            const auto report = classify(p.median_index, config.dunn_recluster_threshold);
            records::add_report_row(summary, p.node_count, report);
            summary.rows.back().insert(summary.rows.back().begin() + 1, p.indices.size());
            const std::string n = std::to_string(p.node_count);
            fig7 += n + ' ' + format_number(p.median_index) + '\n';
            fig8 += n + ' ' + std::to_string(report.separation_pct) + ' ' + std::to_string(report.overlap_pct) + '\n';
            fig9 += n + ' ' + std::to_string(compactness_level(report.compactness)) + '\n';
        }
        write_table(output_file(dir, "sweep_runs", f), runs, f);
        write_table(output_file(dir, "sweep_summary", f), summary, f);
        write_text(dir / "fig7_dunn_index.dat", fig7);
        write_text(dir / "fig8_separation_overlap.dat", fig8);
        write_text(dir / "fig9_compactness.dat", fig9);

        ordered_json extra;
        extra["sweep"] = {{"node_counts", sweep.node_counts}, {"seeds", sweep.seeds}};
        write_manifest(dir, make_manifest("sweep", config, extra));
        out << summary.to_csv();
        return kExitOk;
    });
}

} // namespace clusterbench
