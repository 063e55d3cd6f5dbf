#include "clusterbench/records.hpp"

#include "clusterbench/error.hpp"

#include <algorithm>
#include <map>

namespace clusterbench::records {

using nlohmann::json;

Table node_table(std::span<const Node> nodes)
{
    Table t{{"node_id", "x", "y", "energy"}, {}};
    for (const Node& n : nodes) {
        t.rows.push_back({n.id.value, n.pos.x, n.pos.y, n.energy});
    }
    return t;
}

std::vector<Node> nodes_from_table(const Table& table)
{
    const auto c_id = table.column("node_id");
    const auto c_x = table.column("x");
    const auto c_y = table.column("y");
    const auto c_e = table.column("energy");

    std::vector<Node> nodes;
    nodes.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        Node n;
        const auto id = cell_unsigned(row[c_id], "node_id");
        if (id != nodes.size()) {
            fail(ErrorKind::Input, "node table must list ids 0..N-1 in order; found " + std::to_string(id) +
                                       " at row " + std::to_string(nodes.size() + 1));
        }
        n.id = NodeId(static_cast<std::uint32_t>(id));
        n.pos = {cell_number(row[c_x], "x"), cell_number(row[c_y], "y")};
        n.energy = cell_number(row[c_e], "energy");
        if (!(n.energy >= 0)) {
            fail(ErrorKind::Input, "energy must be >= 0 for node " + std::to_string(id));
        }
        nodes.push_back(n);
    }
    if (nodes.empty()) {
        fail(ErrorKind::Input, "node table is empty");
    }
    return nodes;
}

Table cluster_table(const ClusterSet& clusters, const EnergySnapshot& energies, std::span<const Position> positions)
{
    Table t{{"cluster_id", "node_id", "is_head", "exempt", "energy", "x", "y"}, {}};
    for (const Cluster& c : clusters.clusters) {
        for (const NodeId id : c.members) {
            const Position& p = positions[id.index()];
            t.rows.push_back({c.cluster_id, id.value, id == c.head, c.is_exempt(id), energies.at(id), p.x, p.y});
        }
    }
    return t;
}

Table energy_graph_table(const Cluster& cluster, const EnergySnapshot& energies)
{
    Table t{{"cluster_id", "node_id", "is_head", "energy"}, {}};
    for (const NodeId id : cluster.members) {
        t.rows.push_back({cluster.cluster_id, id.value, id == cluster.head, energies.at(id)});
    }
    return t;
}

LoadedClusters clusters_from_table(const Table& table)
{
    const auto c_cluster = table.column("cluster_id");
    const auto c_node = table.column("node_id");
    const auto c_head = table.column("is_head");
    const auto c_energy = table.column("energy");
    const auto c_x = table.column("x");
    const auto c_y = table.column("y");
    const bool has_exempt =
        std::find(table.columns.begin(), table.columns.end(), "exempt") != table.columns.end();
    const auto c_exempt = has_exempt ? table.column("exempt") : 0;

    const std::size_t n = table.rows.size();
    LoadedClusters out;
    out.positions.resize(n);
    out.energies.energies.resize(n);
    std::vector<bool> seen(n, false);
    std::map<std::uint32_t, Cluster> by_id;
    std::map<std::uint32_t, bool> has_head;

    for (const auto& row : table.rows) {
        const auto cid = cell_unsigned(row[c_cluster], "cluster_id");
        const auto nid = cell_unsigned(row[c_node], "node_id");
        if (nid >= n || seen[nid]) {
            fail(ErrorKind::Input, "cluster table node ids must be unique and in 0.." + std::to_string(n - 1) +
                                       "; bad id " + std::to_string(nid));
        }
        if (cid > std::numeric_limits<std::uint32_t>::max()) {
            fail(ErrorKind::Input, "cluster_id out of range");
        }
        seen[nid] = true;
        const NodeId id(static_cast<std::uint32_t>(nid));
        out.positions[nid] = {cell_number(row[c_x], "x"), cell_number(row[c_y], "y")};
        out.energies.energies[nid] = cell_number(row[c_energy], "energy");

        Cluster& c = by_id[static_cast<std::uint32_t>(cid)];
        c.cluster_id = static_cast<std::uint32_t>(cid);
        c.members.push_back(id);
        if (cell_bool(row[c_head], "is_head")) {
            if (has_head[c.cluster_id]) {
                fail(ErrorKind::Input, "cluster " + std::to_string(cid) + " has more than one head");
            }
            has_head[c.cluster_id] = true;
            c.head = id;
        }
        if (has_exempt && cell_bool(row[c_exempt], "exempt")) {
            c.exempt.push_back(id);
        }
    }

    out.clusters.node_universe = n;
    for (auto& [cid, c] : by_id) {
        if (!has_head[cid]) {
            fail(ErrorKind::Input, "cluster " + std::to_string(cid) + " has no head");
        }
        std::sort(c.members.begin(), c.members.end());
        std::sort(c.exempt.begin(), c.exempt.end());
        out.clusters.clusters.push_back(std::move(c));
    }
    try {
        check_partition(out.clusters);
    } catch (const Error& e) {
        fail(ErrorKind::Input, std::string("cluster table: ") + e.what());
    }
    return out;
}

Table address_table(const ClusterSet& clusters, const AddressAssignment& assignment)
{
    Table t{{"node_id", "cluster_id", "address"}, {}};
    const auto owner = clusters.owner_index();
    for (std::size_t i = 0; i < assignment.addresses.size(); ++i) {
        t.rows.push_back({i, clusters.clusters[owner[i]].cluster_id, assignment.addresses[i].to_string()});
    }
    return t;
}

namespace {

json payload_cell(const std::optional<Ipv6Address>& payload)
{
    return payload ? json(payload->to_string()) : json();
}

} // namespace

Table trace_table(const MessageTrace& trace)
{
    Table t{{"seq", "from", "to", "kind", "payload"}, {}};
    for (const TraceRecord& r : trace) {
        t.rows.push_back({r.seq, r.from.value, r.to.value, std::string(to_string(r.kind)), payload_cell(r.payload)});
    }
    return t;
}

Table report_table()
{
    return Table{{"num_nodes", "dunn_index", "separation", "overlap", "compact", "classification", "recommend_recluster"},
                 {}};
}

void add_report_row(Table& table, std::size_t num_nodes, const ValidationReport& r)
{
    table.rows.push_back({num_nodes, r.dunn_index, std::to_string(r.separation_pct) + "%",
                          std::to_string(r.overlap_pct) + "%", std::string(to_string(r.compactness)),
                          std::string(to_string(r.classification)), r.recommend_recluster});
}

Table timeline_table(const Simulation& sim)
{
    Table t{{"tick", "cluster_id", "node_id", "is_head", "exempt", "energy"}, {}};
    for (const SimSnapshot& s : sim.snapshots) {
        for (const Cluster& c : s.clusters.clusters) {
            for (const NodeId id : c.members) {
                t.rows.push_back({s.at_tick, c.cluster_id, id.value, id == c.head, c.is_exempt(id), s.energies.at(id)});
            }
        }
    }
    return t;
}

Table report_timeline_table(const Simulation& sim)
{
    Table t{{"tick", "num_nodes", "num_clusters", "dunn_index", "separation", "overlap", "compact", "classification",
             "recommend_recluster"},
            {}};
    for (const SimSnapshot& s : sim.snapshots) {
        if (!s.report) {
            continue;
        }
        const ValidationReport& r = *s.report;
        t.rows.push_back({s.at_tick, sim.nodes.size(), s.clusters.size(), r.dunn_index,
                          std::to_string(r.separation_pct) + "%", std::to_string(r.overlap_pct) + "%",
                          std::string(to_string(r.compactness)), std::string(to_string(r.classification)),
                          r.recommend_recluster});
    }
    return t;
}

Table events_table(const Simulation& sim)
{
    Table t{{"tick", "kind", "cluster_id", "node_id", "old_value", "new_value", "trigger_index"}, {}};
    for (const SimSnapshot& s : sim.snapshots) {
        for (const SimEvent& ev : s.events) {
            if (const auto* hc = std::get_if<HeadChange>(&ev)) {
                t.rows.push_back({hc->at_tick, "head_change", hc->cluster_id, hc->new_head.value, hc->old_head.value,
                                  hc->new_head.value, json()});
            } else if (const auto* rc = std::get_if<ReclusterEvent>(&ev)) {
                t.rows.push_back({rc->at_tick, "recluster", json(), json(), rc->old_cluster_count,
                                  rc->new_cluster_count, rc->trigger_index});
            } else if (const auto* ae = std::get_if<AddressEvent>(&ev)) {
                t.rows.push_back({ae->at_tick, "address", ae->cluster_id, ae->node.value, payload_cell(ae->old_address),
                                  ae->new_address.to_string(), json()});
            }
        }
    }
    return t;
}

Table simulation_trace_table(const Simulation& sim)
{
    Table t{{"tick", "seq", "from", "to", "kind", "payload"}, {}};
    for (const SimSnapshot& s : sim.snapshots) {
        if (!s.assignment) {
            continue;
        }
        for (const TraceRecord& r : s.assignment->trace) {
            t.rows.push_back({s.at_tick, r.seq, r.from.value, r.to.value, std::string(to_string(r.kind)),
                              payload_cell(r.payload)});
        }
    }
    return t;
}

} // namespace clusterbench::records
