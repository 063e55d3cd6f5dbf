#include "clusterbench/sim.hpp"

#include "clusterbench/clustering.hpp"
#include "clusterbench/error.hpp"

#include <algorithm>

namespace clusterbench {

EnergySnapshot drain(const EnergySnapshot& energies, const ClusterSet& clusters, const ScenarioConfig& config)
{
    EnergySnapshot next = energies;
    next.at_tick = energies.at_tick + 1;
    for (const Cluster& c : clusters.clusters) {
        for (const NodeId id : c.members) {
            if (id.index() >= next.energies.size()) {
                fail(ErrorKind::Consistency, "node " + std::to_string(id.value) + " is missing from the energy snapshot");
            }
            Energy& e = next.energies[id.index()];
            e = std::max(0.0, e - (id == c.head ? config.drain_head : config.drain_member));
        }
    }
    return next;
}

namespace {

struct Clustered {
    ClusterSet clusters;
    AddressAssignment assignment;
};

Clustered form_clusters(const ScenarioConfig& config, std::span<const Node> nodes, const EnergySnapshot& energies,
                        unsigned threads)
{
    const ClusterSet initial = expac_cluster(nodes, config.tx_range, threads);
    ClusterSet elected = psopac_rebuild(initial, energies, config.energy_threshold, config.comparator);
    AddressAssignment assignment = assign_addresses(elected, config.address_prefix);
    return {std::move(elected), std::move(assignment)};
}

std::optional<ValidationReport> try_validate(const ClusterSet& clusters, std::span<const Position> positions,
                                             const ScenarioConfig& config, unsigned threads)
{
    if (clusters.size() < 2) {
        return std::nullopt;
    }
    return validate(clusters, positions, config.validation_scope, config.dunn_recluster_threshold, threads);
}

void emit_address_events(SimSnapshot& snap, const std::vector<std::optional<Ipv6Address>>& previous,
                         const ClusterSet& clusters)
{
    const auto& addresses = snap.assignment->addresses;
    for (const Cluster& c : clusters.clusters) {
        for (const NodeId id : c.members) {
            const auto& old = previous[id.index()];
            if (old && *old == addresses[id.index()]) {
                continue;
            }
            snap.events.push_back(AddressEvent{snap.at_tick, id, c.cluster_id, old, addresses[id.index()]});
        }
    }
}

// Events inside one snapshot are ordered by kind, then by node or cluster id.
void sort_address_events(std::vector<SimEvent>& events)
{
    std::stable_sort(events.begin(), events.end(), [](const SimEvent& a, const SimEvent& b) {
        if (a.index() != b.index()) {
            return a.index() < b.index();
        }
        if (const auto* ea = std::get_if<AddressEvent>(&a)) {
            return ea->node < std::get<AddressEvent>(b).node;
        }
        return false;
    });
}

} // namespace

Simulation run_simulation(const ScenarioConfig& config, unsigned threads)
{
    validate_config(config);
    const auto nodes = generate_scenario(config);
    return run_simulation(config, nodes, threads);
}

Simulation run_simulation(const ScenarioConfig& config, std::span<const Node> nodes, unsigned threads)
{
    validate_config(config);

    Simulation sim;
    sim.nodes.assign(nodes.begin(), nodes.end());
    for (Node& n : sim.nodes) {
        n.address.reset();
    }
    const auto positions = positions_of(sim.nodes);
    const std::uint64_t ticks = tick_count(config);
    std::vector<std::optional<Ipv6Address>> current(sim.nodes.size());

    std::uint64_t tick = 0;
    try {
        SimSnapshot first;
        first.at_tick = 0;
        first.energies = EnergySnapshot::from_nodes(sim.nodes, 0);
        auto formed = form_clusters(config, sim.nodes, first.energies, threads);
        first.clusters = std::move(formed.clusters);
        first.assignment = std::move(formed.assignment);
        emit_address_events(first, current, first.clusters);
        for (std::size_t i = 0; i < current.size(); ++i) {
            current[i] = first.assignment->addresses[i];
        }
        first.report = try_validate(first.clusters, positions, config, threads);
        sort_address_events(first.events);
        sim.snapshots.push_back(std::move(first));

        for (tick = 1; tick <= ticks; ++tick) {
            const SimSnapshot& prev = sim.snapshots.back();
            SimSnapshot snap;
            snap.at_tick = tick;
            snap.energies = drain(prev.energies, prev.clusters, config);

            auto [rotated, changes] = rotate_heads(prev.clusters, snap.energies);
            snap.clusters = refresh_admission(rotated, snap.energies, config.energy_threshold, config.comparator);
            for (const HeadChange& hc : changes) {
                snap.events.emplace_back(hc);
            }

            if (tick % config.validation_interval == 0) {
                snap.report = try_validate(snap.clusters, positions, config, threads);
            }
            if (snap.report && snap.report->recommend_recluster) {
                const std::size_t old_count = snap.clusters.size();
                auto formed = form_clusters(config, sim.nodes, snap.energies, threads);
                snap.clusters = std::move(formed.clusters);
                snap.assignment = std::move(formed.assignment);
                snap.events.emplace_back(
                    ReclusterEvent{tick, snap.report->dunn_index, old_count, snap.clusters.size()});
                emit_address_events(snap, current, snap.clusters);
                for (std::size_t i = 0; i < current.size(); ++i) {
                    current[i] = snap.assignment->addresses[i];
                }
            }
            sort_address_events(snap.events);
            sim.snapshots.push_back(std::move(snap));
        }
    } catch (const Error& e) {
        throw Error(e.kind(), "tick " + std::to_string(tick) + ": " + e.what());
    }
    return sim;
}

} // namespace clusterbench
