#pragma once

#include "clusterbench/addressing.hpp"
#include "clusterbench/head_election.hpp"
#include "clusterbench/model.hpp"
#include "clusterbench/sim.hpp"
#include "clusterbench/table.hpp"
#include "clusterbench/validation.hpp"

#include <optional>
#include <vector>

// Fixed column layouts for every exported table.
namespace clusterbench::records {

/// node_id,x,y,energy
Table node_table(std::span<const Node> nodes);
std::vector<Node> nodes_from_table(const Table& table);

/// cluster_id,node_id,is_head,exempt,energy,x,y (sorted by cluster, then node)
Table cluster_table(const ClusterSet& clusters, const EnergySnapshot& energies, std::span<const Position> positions);

/// cluster_id,node_id,is_head,energy for one cluster (bar-chart data)
Table energy_graph_table(const Cluster& cluster, const EnergySnapshot& energies);

struct LoadedClusters {
    ClusterSet clusters;
    std::vector<Position> positions;
    EnergySnapshot energies;
};
LoadedClusters clusters_from_table(const Table& table);

/// node_id,cluster_id,address
Table address_table(const ClusterSet& clusters, const AddressAssignment& assignment);

/// seq,from,to,kind,payload
Table trace_table(const MessageTrace& trace);

/// num_nodes,dunn_index,separation,overlap,compact,classification,recommend_recluster
Table report_table();
void add_report_row(Table& table, std::size_t num_nodes, const ValidationReport& report);

/// tick,cluster_id,node_id,is_head,exempt,energy
Table timeline_table(const Simulation& sim);

/// tick,num_nodes,num_clusters,dunn_index,separation,overlap,compact,classification,recommend_recluster
Table report_timeline_table(const Simulation& sim);

/// tick,kind,cluster_id,node_id,old_value,new_value,trigger_index
Table events_table(const Simulation& sim);

/// tick,seq,from,to,kind,payload over every addressing round of a run
Table simulation_trace_table(const Simulation& sim);

} // namespace clusterbench::records
