#pragma once

#include "clusterbench/model.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace clusterbench {

/// Energy of every node in the universe at one tick, indexed by node id.
struct EnergySnapshot {
    std::uint64_t at_tick = 0;
    std::vector<Energy> energies;

    Energy at(NodeId id) const;

    static EnergySnapshot from_nodes(std::span<const Node> nodes, std::uint64_t tick = 0);

    friend bool operator==(const EnergySnapshot&, const EnergySnapshot&) = default;
};

struct HeadChange {
    std::uint32_t cluster_id = 0;
    NodeId old_head;
    NodeId new_head;
    std::uint64_t at_tick = 0;

    friend bool operator==(const HeadChange&, const HeadChange&) = default;
};

/// True when energy passes the membership predicate for the given comparator.
bool admits(Comparator comparator, Energy energy, Energy threshold) noexcept;

/// Member with the highest energy; ties go to the lower id.
/// Throws Error(Consistency) when a member is missing from the snapshot.
NodeId max_energy_node(const Cluster& cluster, const EnergySnapshot& snapshot);

/// Rebuilds every cluster around its max-energy head. Other members are kept; those
/// that fail the predicate are listed in Cluster::exempt. Cluster ids are preserved.
ClusterSet psopac_rebuild(const ClusterSet& clusters, const EnergySnapshot& snapshot, Energy threshold,
                          Comparator comparator);

/// Re-elects heads with unchanged membership, reporting every head that moved.
/// A new head is removed from the exempt list; other flags are left as they were.
std::pair<ClusterSet, std::vector<HeadChange>> rotate_heads(const ClusterSet& clusters,
                                                           const EnergySnapshot& snapshot);

/// Recomputes exempt flags against the current heads and energies.
ClusterSet refresh_admission(const ClusterSet& clusters, const EnergySnapshot& snapshot, Energy threshold,
                             Comparator comparator);

} // namespace clusterbench
