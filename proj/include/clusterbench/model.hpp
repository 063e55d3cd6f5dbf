#pragma once

#include "clusterbench/ipv6.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clusterbench {

struct Position {
    double x = 0.0; // meters
    double y = 0.0; // meters

    friend constexpr bool operator==(const Position&, const Position&) = default;
};

/// Dense node identifier: ids within one scenario are exactly 0..N-1.
struct NodeId {
    std::uint32_t value = 0;

    constexpr NodeId() = default;
    constexpr explicit NodeId(std::uint32_t v) : value(v) {}

    constexpr std::size_t index() const noexcept { return value; }

    friend constexpr auto operator<=>(const NodeId&, const NodeId&) = default;
};

/// Energy in dimensionless units; never negative.
using Energy = double;

struct Node {
    NodeId id;
    Position pos;
    Energy energy = 0.0;
    std::optional<Ipv6Address> address;

    friend bool operator==(const Node&, const Node&) = default;
};

struct Cluster {
    std::uint32_t cluster_id = 0;
    NodeId head;
    std::vector<NodeId> members; // sorted, includes head
    std::vector<NodeId> exempt;  // sorted subset of members that failed the energy predicate

    bool contains(NodeId id) const;
    bool is_exempt(NodeId id) const;

    friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct ClusterSet {
    std::vector<Cluster> clusters;
    std::size_t node_universe = 0;

    std::size_t size() const noexcept { return clusters.size(); }

    /// node index -> position of its cluster in `clusters`.
    std::vector<std::size_t> owner_index() const;

    friend bool operator==(const ClusterSet&, const ClusterSet&) = default;
};

/// Throws Error(InvariantViolation) unless clusters are non-empty, sorted, disjoint,
/// head-containing and jointly cover 0..node_universe-1.
void check_partition(const ClusterSet& set);

/// Membership predicate applied to non-head members when heads are elected.
enum class Comparator {
    Below,     // admit when E < threshold
    AtOrAbove, // admit when E >= threshold
};

std::string_view to_string(Comparator c) noexcept;
Comparator parse_comparator(std::string_view text);

/// Which node set Dunn's index is computed over.
enum class ValidationScope {
    Admitted,  // head plus admitted members of each cluster
    Partition, // every member, exempt or not
};

std::string_view to_string(ValidationScope s) noexcept;
ValidationScope parse_validation_scope(std::string_view text);

struct ScenarioConfig {
    std::uint32_t node_count = 25;
    double area_width = 100.0;
    double area_height = 100.0;
    double tx_range = 20.0;
    Energy energy_threshold = 500.0;
    double execution_time = 5.0;
    double tick = 1.0;
    std::uint64_t seed = 1;
    Energy initial_energy_min = 400.0;
    Energy initial_energy_max = 1000.0;
    Energy drain_member = 10.0;
    Energy drain_head = 50.0;
    double dunn_recluster_threshold = 0.5;
    std::uint32_t validation_interval = 1;
    Comparator comparator = Comparator::Below;
    ValidationScope validation_scope = ValidationScope::Admitted;
    Prefix48 address_prefix;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Throws Error(Config) naming the first offending field.
void validate_config(const ScenarioConfig& config);

/// Number of ticks after tick 0: execution_time / tick, which must be integral.
std::uint64_t tick_count(const ScenarioConfig& config);

/// Name of the placement generator, recorded in run manifests.
inline constexpr std::string_view kRngName = "mt19937_64/u53";
inline constexpr std::string_view kPlacementName = "uniform";

/// Uniform placement and uniform initial energy, a pure function of config.
/// Per node, in id order, draws x, y, then energy.
std::vector<Node> generate_scenario(const ScenarioConfig& config);

std::vector<Position> positions_of(std::span<const Node> nodes);

} // namespace clusterbench

template <>
struct std::hash<clusterbench::NodeId> {
    std::size_t operator()(clusterbench::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
