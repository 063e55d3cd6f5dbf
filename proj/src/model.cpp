#include "clusterbench/model.hpp"

#include "clusterbench/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace clusterbench {

bool Cluster::contains(NodeId id) const { return std::binary_search(members.begin(), members.end(), id); }

bool Cluster::is_exempt(NodeId id) const { return std::binary_search(exempt.begin(), exempt.end(), id); }

std::vector<std::size_t> ClusterSet::owner_index() const
{
    std::vector<std::size_t> owner(node_universe, clusters.size());
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (const NodeId id : clusters[c].members) {
            if (id.index() < node_universe) {
                owner[id.index()] = c;
            }
        }
    }
    return owner;
}

void check_partition(const ClusterSet& set)
{
    std::vector<bool> seen(set.node_universe, false);
    std::size_t covered = 0;
    for (const Cluster& c : set.clusters) {
        const std::string where = "cluster " + std::to_string(c.cluster_id);
        if (c.members.empty()) {
            fail(ErrorKind::InvariantViolation, where + " is empty");
        }
        if (!std::is_sorted(c.members.begin(), c.members.end())) {
            fail(ErrorKind::InvariantViolation, where + " members are not sorted");
        }
        if (!c.contains(c.head)) {
            fail(ErrorKind::InvariantViolation, where + " does not contain its head");
        }
        if (c.is_exempt(c.head)) {
            fail(ErrorKind::InvariantViolation, where + " head is flagged exempt");
        }
        for (const NodeId id : c.exempt) {
            if (!c.contains(id)) {
                fail(ErrorKind::InvariantViolation, where + " has an exempt node that is not a member");
            }
        }
        for (const NodeId id : c.members) {
            if (id.index() >= set.node_universe) {
                fail(ErrorKind::InvariantViolation, where + " references unknown node " + std::to_string(id.value));
            }
            if (seen[id.index()]) {
                fail(ErrorKind::InvariantViolation, "node " + std::to_string(id.value) + " is in more than one cluster");
            }
            seen[id.index()] = true;
            ++covered;
        }
    }
    if (covered != set.node_universe) {
        fail(ErrorKind::InvariantViolation, "clusters cover " + std::to_string(covered) + " of " +
                                                std::to_string(set.node_universe) + " nodes");
    }
}

std::string_view to_string(Comparator c) noexcept
{
    return c == Comparator::Below ? "below" : "at_or_above";
}

Comparator parse_comparator(std::string_view text)
{
    if (text == "below") {
        return Comparator::Below;
    }
    if (text == "at_or_above" || text == "at-or-above") {
        return Comparator::AtOrAbove;
    }
    fail(ErrorKind::Config, "comparator: expected 'below' or 'at_or_above', got '" + std::string(text) + "'");
}

std::string_view to_string(ValidationScope s) noexcept
{
    return s == ValidationScope::Admitted ? "admitted" : "partition";
}

ValidationScope parse_validation_scope(std::string_view text)
{
    if (text == "admitted") {
        return ValidationScope::Admitted;
    }
    if (text == "partition") {
        return ValidationScope::Partition;
    }
    fail(ErrorKind::Config, "validation_scope: expected 'admitted' or 'partition', got '" + std::string(text) + "'");
}

void validate_config(const ScenarioConfig& c)
{
    auto require = [](bool ok, const char* field, const char* rule) {
        if (!ok) {
            fail(ErrorKind::Config, std::string(field) + ": " + rule);
        }
    };
    auto finite = [](double v) { return std::isfinite(v); };

    require(c.node_count >= 1, "node_count", "must be >= 1");
    require(finite(c.area_width) && c.area_width > 0, "area.width", "must be > 0");
    require(finite(c.area_height) && c.area_height > 0, "area.height", "must be > 0");
    require(finite(c.tx_range) && c.tx_range > 0, "tx_range", "must be > 0");
    require(finite(c.energy_threshold) && c.energy_threshold >= 0, "energy_threshold", "must be >= 0");
    require(finite(c.tick) && c.tick > 0, "tick", "must be > 0");
    require(finite(c.execution_time) && c.execution_time >= 0, "execution_time", "must be >= 0");
    require(finite(c.initial_energy_min) && c.initial_energy_min >= 0, "initial_energy.min", "must be >= 0");
    require(finite(c.initial_energy_max) && c.initial_energy_max >= c.initial_energy_min, "initial_energy.max",
            "must be >= initial_energy.min");
    require(finite(c.drain_member) && c.drain_member >= 0, "drain_member", "must be >= 0");
    require(finite(c.drain_head) && c.drain_head >= c.drain_member, "drain_head", "must be >= drain_member");
    require(!std::isnan(c.dunn_recluster_threshold) && c.dunn_recluster_threshold >= 0, "dunn_recluster_threshold",
            "must be >= 0");
    require(c.validation_interval >= 1, "validation_interval", "must be >= 1");

    const double ratio = c.execution_time / c.tick;
    require(std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, ratio), "execution_time",
            "must be a whole number of ticks");
}

std::uint64_t tick_count(const ScenarioConfig& config)
{
    return static_cast<std::uint64_t>(std::llround(config.execution_time / config.tick));
}

namespace {

// Top 53 bits of one draw, mapped to [0, 1). Avoids std::uniform_real_distribution,
// whose output is not specified identically across standard libraries.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

std::vector<Node> generate_scenario(const ScenarioConfig& config)
{
    validate_config(config);

    std::mt19937_64 rng(config.seed);
    const double energy_span = config.initial_energy_max - config.initial_energy_min;

    std::vector<Node> nodes;
    nodes.reserve(config.node_count);
    for (std::uint32_t i = 0; i < config.node_count; ++i) {
        Node n;
        n.id = NodeId(i);
        n.pos.x = config.area_width * unit_draw(rng);
        n.pos.y = config.area_height * unit_draw(rng);
        n.energy = config.initial_energy_min + energy_span * unit_draw(rng);
        nodes.push_back(n);
    }
    return nodes;
}

std::vector<Position> positions_of(std::span<const Node> nodes)
{
    std::vector<Position> out;
    out.reserve(nodes.size());
    for (const Node& n : nodes) {
        out.push_back(n.pos);
    }
    return out;
}

} // namespace clusterbench
