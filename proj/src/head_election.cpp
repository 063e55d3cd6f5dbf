#include "clusterbench/head_election.hpp"

#include "clusterbench/error.hpp"

#include <algorithm>

namespace clusterbench {

Energy EnergySnapshot::at(NodeId id) const
{
    if (id.index() >= energies.size()) {
        fail(ErrorKind::Consistency, "node " + std::to_string(id.value) + " is missing from the energy snapshot");
    }
    return energies[id.index()];
}

EnergySnapshot EnergySnapshot::from_nodes(std::span<const Node> nodes, std::uint64_t tick)
{
    EnergySnapshot snap;
    snap.at_tick = tick;
    snap.energies.resize(nodes.size());
    for (const Node& n : nodes) {
        if (n.id.index() >= nodes.size()) {
            fail(ErrorKind::Input, "node ids must be dense");
        }
        snap.energies[n.id.index()] = n.energy;
    }
    return snap;
}

bool admits(Comparator comparator, Energy energy, Energy threshold) noexcept
{
    return comparator == Comparator::Below ? energy < threshold : energy >= threshold;
}

NodeId max_energy_node(const Cluster& cluster, const EnergySnapshot& snapshot)
{
    if (cluster.members.empty()) {
        fail(ErrorKind::Input, "cluster " + std::to_string(cluster.cluster_id) + " has no members");
    }
    NodeId best = cluster.members.front();
    Energy best_energy = snapshot.at(best);
    for (const NodeId id : cluster.members) {
        const Energy e = snapshot.at(id);
        if (e > best_energy || (e == best_energy && id < best)) {
            best = id;
            best_energy = e;
        }
    }
    return best;
}

namespace {

std::vector<NodeId> failing_members(const Cluster& c, const EnergySnapshot& snapshot, Energy threshold,
                                    Comparator comparator)
{
    std::vector<NodeId> out;
    for (const NodeId id : c.members) {
        if (id != c.head && !admits(comparator, snapshot.at(id), threshold)) {
            out.push_back(id);
        }
    }
    return out;
}

} // namespace

ClusterSet psopac_rebuild(const ClusterSet& clusters, const EnergySnapshot& snapshot, Energy threshold,
                          Comparator comparator)
{
    if (clusters.clusters.empty()) {
        fail(ErrorKind::Input, "cannot elect heads over an empty cluster set");
    }
    ClusterSet out;
    out.node_universe = clusters.node_universe;
    out.clusters.reserve(clusters.size());
    for (const Cluster& in : clusters.clusters) {
        Cluster k;
        k.cluster_id = in.cluster_id;
        k.head = max_energy_node(in, snapshot);
        k.members = in.members;
        k.exempt = failing_members(k, snapshot, threshold, comparator);
        out.clusters.push_back(std::move(k));
    }
    return out;
}

std::pair<ClusterSet, std::vector<HeadChange>> rotate_heads(const ClusterSet& clusters,
                                                           const EnergySnapshot& snapshot)
{
    ClusterSet out = clusters;
    std::vector<HeadChange> changes;
    for (Cluster& c : out.clusters) {
        const NodeId elected = max_energy_node(c, snapshot);
        if (elected == c.head) {
            continue;
        }
        changes.push_back({c.cluster_id, c.head, elected, snapshot.at_tick});
        c.head = elected;
        std::erase(c.exempt, elected);
    }
    return {std::move(out), std::move(changes)};
}

ClusterSet refresh_admission(const ClusterSet& clusters, const EnergySnapshot& snapshot, Energy threshold,
                             Comparator comparator)
{
    ClusterSet out = clusters;
    for (Cluster& c : out.clusters) {
        c.exempt = failing_members(c, snapshot, threshold, comparator);
    }
    return out;
}

} // namespace clusterbench
