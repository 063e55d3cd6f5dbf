#include "clusterbench/clustering.hpp"

#include "clusterbench/error.hpp"
#include "clusterbench/parallel.hpp"

#include <cmath>

namespace clusterbench {

double manhattan_distance(Position a, Position b) noexcept { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

namespace {

void check_nodes(std::span<const Node> nodes, double tx_range)
{
    if (nodes.empty()) {
        fail(ErrorKind::Input, "clustering needs at least one node");
    }
    if (!(tx_range > 0)) {
        fail(ErrorKind::Input, "tx_range must be > 0");
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id.index() != i) {
            fail(ErrorKind::Input, "node ids must be dense and ordered: position " + std::to_string(i) + " holds id " +
                                       std::to_string(nodes[i].id.value));
        }
    }
}

} // namespace

std::vector<CandidateCluster> pac_candidates(std::span<const Node> nodes, double tx_range, unsigned threads)
{
    check_nodes(nodes, tx_range);

    std::vector<CandidateCluster> candidates(nodes.size());
    parallel_for(nodes.size(), threads, [&](std::size_t i) {
        CandidateCluster& cand = candidates[i];
        cand.temp_head = nodes[i].id;
        for (const Node& other : nodes) {
            if (other.id == nodes[i].id || manhattan_distance(nodes[i].pos, other.pos) < tx_range) {
                cand.covered.push_back(other.id);
            }
        }
        cand.count = cand.covered.size() - 1;
    });
    return candidates;
}

ClusterSet expac_cluster(std::span<const Node> nodes, double tx_range, unsigned threads)
{
    const auto candidates = pac_candidates(nodes, tx_range, threads);
    const std::size_t n = nodes.size();

    // The "within range" relation is symmetric, so candidates[j].covered also lists
    // every candidate that covers j. live[i] counts unclustered nodes covered by i.
    std::vector<std::size_t> live(n);
    for (std::size_t i = 0; i < n; ++i) {
        live[i] = candidates[i].covered.size();
    }
    std::vector<bool> clustered(n, false);
    std::size_t remaining = n;

    ClusterSet out;
    out.node_universe = n;
    while (remaining > 0) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!clustered[i] && (best == n || live[i] > live[best])) {
                best = i;
            }
        }

        Cluster cluster;
        cluster.cluster_id = static_cast<std::uint32_t>(out.clusters.size());
        cluster.head = candidates[best].temp_head;
        for (const NodeId id : candidates[best].covered) {
            if (clustered[id.index()]) {
                continue;
            }
            cluster.members.push_back(id);
        }
        for (const NodeId id : cluster.members) {
            clustered[id.index()] = true;
            --remaining;
            for (const NodeId coverer : candidates[id.index()].covered) {
                --live[coverer.index()];
            }
        }
        out.clusters.push_back(std::move(cluster));
    }
    return out;
}

} // namespace clusterbench
