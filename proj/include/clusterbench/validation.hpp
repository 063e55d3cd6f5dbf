#pragma once

#include "clusterbench/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace clusterbench {

enum class Compactness { High, Low, VeryLow };

enum class Classification {
    CompactLessSeparated, // 0 <= index <= 0.5
    CompactWellSeparated, // 0.5 < index <= 1
    OffScale,             // index > 1
    Degenerate,           // infinite index: every cluster has zero diameter
};

std::string_view to_string(Compactness c) noexcept;
std::string_view to_string(Classification c) noexcept;

struct ValidationReport {
    double dunn_index = 0.0;
    int separation_pct = 0;
    int overlap_pct = 100;
    Compactness compactness = Compactness::VeryLow;
    Classification classification = Classification::CompactLessSeparated;
    bool recommend_recluster = false;
    std::optional<std::string> note;

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

inline constexpr double kDefaultReclusterThreshold = 0.5;

/// Smallest Manhattan distance between a member of `cp` and a member of `cq`.
/// Throws Error(InvariantViolation) if the clusters share a node.
double inter_cluster_distance(const Cluster& cp, const Cluster& cq, std::span<const Position> positions);

/// Largest Manhattan distance between two members; 0 for singletons.
double cluster_diameter(const Cluster& c, std::span<const Position> positions);

/// min over cluster pairs of inter_cluster_distance / max cluster_diameter.
/// +infinity when all diameters are zero but clusters are apart.
/// Throws UndefinedIndex for fewer than two clusters and DegenerateGeometry for 0/0.
double dunn_index(const ClusterSet& clusters, std::span<const Position> positions, unsigned threads = 1);

/// Maps an index onto separation/overlap percentages, compactness and classification.
/// Throws Error(Input) for a negative or NaN index.
ValidationReport classify(double index, double recluster_threshold = kDefaultReclusterThreshold);

/// Each cluster restricted to its head and admitted (non-exempt) members.
ClusterSet admitted_view(const ClusterSet& clusters);

/// dunn_index over the chosen scope, then classify.
ValidationReport validate(const ClusterSet& clusters, std::span<const Position> positions, ValidationScope scope,
                          double recluster_threshold = kDefaultReclusterThreshold, unsigned threads = 1);

} // namespace clusterbench
