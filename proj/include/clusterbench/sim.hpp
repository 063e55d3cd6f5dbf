#pragma once

#include "clusterbench/addressing.hpp"
#include "clusterbench/head_election.hpp"
#include "clusterbench/model.hpp"
#include "clusterbench/validation.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace clusterbench {

struct ReclusterEvent {
    std::uint64_t at_tick = 0;
    double trigger_index = 0.0;
    std::size_t old_cluster_count = 0;
    std::size_t new_cluster_count = 0;

    friend bool operator==(const ReclusterEvent&, const ReclusterEvent&) = default;
};

struct AddressEvent {
    std::uint64_t at_tick = 0;
    NodeId node;
    std::uint32_t cluster_id = 0;
    std::optional<Ipv6Address> old_address;
    Ipv6Address new_address;

    friend bool operator==(const AddressEvent&, const AddressEvent&) = default;
};

using SimEvent = std::variant<HeadChange, ReclusterEvent, AddressEvent>;

struct SimSnapshot {
    std::uint64_t at_tick = 0;
    ClusterSet clusters;
    EnergySnapshot energies;
    std::optional<ValidationReport> report; // absent when not validated or fewer than 2 clusters
    std::vector<SimEvent> events;
    std::optional<AddressAssignment> assignment; // set on ticks where addresses were (re)assigned
};

struct Simulation {
    std::vector<Node> nodes; // initial state, without addresses
    std::vector<SimSnapshot> snapshots;
};

/// Linear drain: heads lose drain_head, every other member drain_member, clamped at 0.
/// The returned snapshot is one tick later.
EnergySnapshot drain(const EnergySnapshot& energies, const ClusterSet& clusters, const ScenarioConfig& config);

/// Tick 0: cluster, elect heads, assign addresses, validate. Every later tick: drain,
/// rotate heads, refresh admission, validate every validation_interval ticks and
/// re-cluster when the report recommends it. Errors carry the tick number.
Simulation run_simulation(const ScenarioConfig& config, unsigned threads = 1);

/// Same timeline over a caller-provided node set (ids 0..N-1 in order).
Simulation run_simulation(const ScenarioConfig& config, std::span<const Node> nodes, unsigned threads = 1);

} // namespace clusterbench
