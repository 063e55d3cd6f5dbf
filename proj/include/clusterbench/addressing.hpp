#pragma once

#include "clusterbench/ipv6.hpp"
#include "clusterbench/model.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace clusterbench {

enum class MessageKind { Hello, Reply, Assign };

std::string_view to_string(MessageKind kind) noexcept;

struct TraceRecord {
    std::uint64_t seq = 0;
    NodeId from;
    NodeId to;
    MessageKind kind = MessageKind::Hello;
    std::optional<Ipv6Address> payload;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

using MessageTrace = std::vector<TraceRecord>;

struct AddressAssignment {
    std::vector<Ipv6Address> addresses; // indexed by node id
    MessageTrace trace;
};

/// prefix (48) | cluster_id (16) | interface id (64) = node id + 1.
Ipv6Address make_address(Prefix48 prefix, std::uint32_t cluster_id, NodeId node);

/// Stateful assignment with each head acting as the address server. The head
/// configures itself without messages; then, per member in ascending id order,
/// Hello (head->member), Reply (member->head), Assign (head->member).
/// Throws Error(Capacity) when a cluster id does not fit in 16 bits.
AddressAssignment assign_addresses(const ClusterSet& clusters, Prefix48 prefix);

} // namespace clusterbench
