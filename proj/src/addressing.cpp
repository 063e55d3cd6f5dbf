#include "clusterbench/addressing.hpp"

#include "clusterbench/error.hpp"

#include <limits>

namespace clusterbench {

std::string_view to_string(MessageKind kind) noexcept
{
    switch (kind) {
    case MessageKind::Hello: return "Hello";
    case MessageKind::Reply: return "Reply";
    case MessageKind::Assign: return "Assign";
    }
    return "?";
}

Ipv6Address make_address(Prefix48 prefix, std::uint32_t cluster_id, NodeId node)
{
    if (cluster_id > std::numeric_limits<std::uint16_t>::max()) {
        fail(ErrorKind::Capacity, "cluster id " + std::to_string(cluster_id) + " does not fit the 16-bit subnet field");
    }
    // NodeId is 32 bits wide, so id + 1 always fits the 64-bit interface id.
    return {(prefix.bits() << 16) | cluster_id, std::uint64_t{node.value} + 1};
}

AddressAssignment assign_addresses(const ClusterSet& clusters, Prefix48 prefix)
{
    check_partition(clusters);

    AddressAssignment out;
    out.addresses.resize(clusters.node_universe);
    std::uint64_t seq = 0;
    for (const Cluster& c : clusters.clusters) {
        if (c.cluster_id > std::numeric_limits<std::uint16_t>::max()) {
            fail(ErrorKind::Capacity, "cluster id " + std::to_string(c.cluster_id) + " overflows the subnet field");
        }
        out.addresses[c.head.index()] = make_address(prefix, c.cluster_id, c.head);
        for (const NodeId member : c.members) {
            if (member == c.head) {
                continue;
            }
            const Ipv6Address addr = make_address(prefix, c.cluster_id, member);
            out.trace.push_back({seq++, c.head, member, MessageKind::Hello, std::nullopt});
            out.trace.push_back({seq++, member, c.head, MessageKind::Reply, std::nullopt});
            out.trace.push_back({seq++, c.head, member, MessageKind::Assign, addr});
            out.addresses[member.index()] = addr;
        }
    }
    return out;
}

} // namespace clusterbench
