#pragma once

#include "clusterbench/model.hpp"

#include <span>
#include <vector>

namespace clusterbench {

/// One node acting as a temporary head, with every node strictly inside its range.
struct CandidateCluster {
    NodeId temp_head;
    std::vector<NodeId> covered; // sorted, includes temp_head
    std::size_t count = 0;       // covered.size() - 1

    friend bool operator==(const CandidateCluster&, const CandidateCluster&) = default;
};

/// L1 distance.
double manhattan_distance(Position a, Position b) noexcept;

/// One candidate per node, ordered by id. Membership is MD < tx_range (strict).
/// `nodes` must be indexed by id (nodes[i].id == i).
std::vector<CandidateCluster> pac_candidates(std::span<const Node> nodes, double tx_range, unsigned threads = 1);

/// Greedy cover over the candidates. The first cluster is the candidate with the
/// highest count; each following cluster is the candidate, among those whose
/// temporary head is still unclustered, that covers the most unclustered nodes.
/// Covered nodes are removed before the next selection, so the result is a
/// partition. Ties go to the lower head id; cluster ids follow selection order.
ClusterSet expac_cluster(std::span<const Node> nodes, double tx_range, unsigned threads = 1);

} // namespace clusterbench
