#include "clusterbench/validation.hpp"

#include "clusterbench/clustering.hpp"
#include "clusterbench/error.hpp"
#include "clusterbench/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace clusterbench {

std::string_view to_string(Compactness c) noexcept
{
    switch (c) {
    case Compactness::High: return "High";
    case Compactness::Low: return "Low";
    case Compactness::VeryLow: return "VeryLow";
    }
    return "?";
}

std::string_view to_string(Classification c) noexcept
{
    switch (c) {
    case Classification::CompactLessSeparated: return "CompactLessSeparated";
    case Classification::CompactWellSeparated: return "CompactWellSeparated";
    case Classification::OffScale: return "OffScale";
    case Classification::Degenerate: return "Degenerate";
    }
    return "?";
}

namespace {

const Position& position_of(NodeId id, std::span<const Position> positions)
{
    if (id.index() >= positions.size()) {
        fail(ErrorKind::Consistency, "no position for node " + std::to_string(id.value));
    }
    return positions[id.index()];
}

double min_cross_distance(const Cluster& cp, const Cluster& cq, std::span<const Position> positions)
{
    double best = std::numeric_limits<double>::infinity();
    for (const NodeId m : cp.members) {
        const Position& pm = positions[m.index()];
        for (const NodeId n : cq.members) {
            best = std::min(best, manhattan_distance(pm, positions[n.index()]));
        }
    }
    return best;
}

double diameter_unchecked(const Cluster& c, std::span<const Position> positions)
{
    double best = 0.0;
    for (std::size_t i = 0; i < c.members.size(); ++i) {
        const Position& pi = positions[c.members[i].index()];
        for (std::size_t j = i + 1; j < c.members.size(); ++j) {
            best = std::max(best, manhattan_distance(pi, positions[c.members[j].index()]));
        }
    }
    return best;
}

void check_members(const Cluster& c, std::span<const Position> positions)
{
    if (c.members.empty()) {
        fail(ErrorKind::Input, "cluster " + std::to_string(c.cluster_id) + " is empty");
    }
    for (const NodeId id : c.members) {
        position_of(id, positions);
    }
}

} // namespace

double inter_cluster_distance(const Cluster& cp, const Cluster& cq, std::span<const Position> positions)
{
    check_members(cp, positions);
    check_members(cq, positions);
    for (const NodeId id : cp.members) {
        if (std::find(cq.members.begin(), cq.members.end(), id) != cq.members.end()) {
            fail(ErrorKind::InvariantViolation, "clusters " + std::to_string(cp.cluster_id) + " and " +
                                                    std::to_string(cq.cluster_id) + " share node " +
                                                    std::to_string(id.value));
        }
    }
    return min_cross_distance(cp, cq, positions);
}

double cluster_diameter(const Cluster& c, std::span<const Position> positions)
{
    check_members(c, positions);
    return diameter_unchecked(c, positions);
}

double dunn_index(const ClusterSet& clusters, std::span<const Position> positions, unsigned threads)
{
    const auto& cs = clusters.clusters;
    if (cs.size() < 2) {
        fail(ErrorKind::UndefinedIndex, "UNDEFINED_INDEX: Dunn's index needs at least 2 clusters, got " +
                                            std::to_string(cs.size()));
    }
    std::vector<std::size_t> owner(positions.size(), cs.size());
    for (std::size_t c = 0; c < cs.size(); ++c) {
        check_members(cs[c], positions);
        for (const NodeId id : cs[c].members) {
            if (owner[id.index()] != cs.size()) {
                fail(ErrorKind::InvariantViolation, "node " + std::to_string(id.value) + " is in more than one cluster");
            }
            owner[id.index()] = c;
        }
    }

    // Row p holds min distance to every later cluster and the diameter of p.
    // min/max are order-free, so the reduction does not depend on `threads`.
    std::vector<double> row_min(cs.size(), std::numeric_limits<double>::infinity());
    std::vector<double> diameters(cs.size(), 0.0);
    parallel_for(cs.size(), threads, [&](std::size_t p) {
        diameters[p] = diameter_unchecked(cs[p], positions);
        for (std::size_t q = p + 1; q < cs.size(); ++q) {
            row_min[p] = std::min(row_min[p], min_cross_distance(cs[p], cs[q], positions));
        }
    });
    const double min_distance = *std::min_element(row_min.begin(), row_min.end());
    const double max_diameter = *std::max_element(diameters.begin(), diameters.end());

    if (max_diameter == 0.0) {
        if (min_distance == 0.0) {
            fail(ErrorKind::DegenerateGeometry,
                 "DEGENERATE_GEOMETRY: zero diameter and zero separation (coincident nodes in different clusters)");
        }
        return std::numeric_limits<double>::infinity();
    }
    return min_distance / max_diameter;
}

ValidationReport classify(double index, double recluster_threshold)
{
    if (std::isnan(index) || index < 0) {
        fail(ErrorKind::Input, "Dunn's index must be >= 0");
    }
    ValidationReport r;
    r.dunn_index = index;
    r.separation_pct = std::isinf(index) ? 100 : static_cast<int>(std::clamp(std::round(index * 100.0), 0.0, 100.0));
    r.overlap_pct = 100 - r.separation_pct;

    if (index >= 0.5) {
        r.compactness = Compactness::High;
    } else if (index >= 0.1) {
        r.compactness = Compactness::Low;
    } else {
        r.compactness = Compactness::VeryLow;
    }

    if (std::isinf(index)) {
        r.classification = Classification::Degenerate;
    } else if (index > 1.0) {
        r.classification = Classification::OffScale;
    } else if (index > 0.5) {
        r.classification = Classification::CompactWellSeparated;
    } else {
        r.classification = Classification::CompactLessSeparated;
    }

    r.recommend_recluster = index < recluster_threshold;

    if (r.separation_pct == 1) {
        r.note = "index 0.01 maps to 1% separation / 99% overlap under the x100 rule; "
                 "a 10%/90% reading of this value is not reproduced";
    }
    return r;
}

ClusterSet admitted_view(const ClusterSet& clusters)
{
    ClusterSet out = clusters;
    for (Cluster& c : out.clusters) {
        std::vector<NodeId> core;
        core.reserve(c.members.size());
        std::set_difference(c.members.begin(), c.members.end(), c.exempt.begin(), c.exempt.end(),
                            std::back_inserter(core));
        c.members = std::move(core);
        c.exempt.clear();
    }
    return out;
}

ValidationReport validate(const ClusterSet& clusters, std::span<const Position> positions, ValidationScope scope,
                          double recluster_threshold, unsigned threads)
{
    const double index = scope == ValidationScope::Admitted ? dunn_index(admitted_view(clusters), positions, threads)
                                                            : dunn_index(clusters, positions, threads);
    return classify(index, recluster_threshold);
}

} // namespace clusterbench
