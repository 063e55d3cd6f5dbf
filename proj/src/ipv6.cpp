#include "clusterbench/ipv6.hpp"

#include "clusterbench/error.hpp"

#include <array>
#include <charconv>
#include <vector>

namespace clusterbench {

namespace {

std::uint16_t parse_group(std::string_view text, std::string_view whole)
{
    unsigned value = 0;
    if (text.empty() || text.size() > 4) {
        fail(ErrorKind::Input, "malformed IPv6 group in '" + std::string(whole) + "'");
    }
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, 16);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        fail(ErrorKind::Input, "malformed IPv6 group in '" + std::string(whole) + "'");
    }
    return static_cast<std::uint16_t>(value);
}

std::vector<std::uint16_t> parse_groups(std::string_view text, std::string_view whole)
{
    std::vector<std::uint16_t> groups;
    if (text.empty()) {
        return groups;
    }
    std::size_t start = 0;
    while (true) {
        const auto colon = text.find(':', start);
        groups.push_back(parse_group(text.substr(start, colon - start), whole));
        if (colon == std::string_view::npos) {
            break;
        }
        start = colon + 1;
    }
    return groups;
}

void append_hex(std::string& out, std::uint16_t value)
{
    std::array<char, 4> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, 16);
    out.append(buf.data(), ptr);
}

} // namespace

std::string Ipv6Address::to_string() const
{
    std::array<std::uint16_t, 8> g{};
    for (int i = 0; i < 8; ++i) {
        g[i] = group(i);
    }

    // longest run of zero groups, first one wins on ties
    int best_start = -1;
    int best_len = 0;
    for (int i = 0; i < 8;) {
        if (g[i] != 0) {
            ++i;
            continue;
        }
        int j = i;
        while (j < 8 && g[j] == 0) {
            ++j;
        }
        if (j - i > best_len) {
            best_start = i;
            best_len = j - i;
        }
        i = j;
    }
    if (best_len < 2) {
        best_start = -1;
    }

    std::string out;
    for (int i = 0; i < 8; ++i) {
        if (i == best_start) {
            out += "::";
            i += best_len - 1;
            continue;
        }
        if (!out.empty() && out.back() != ':') {
            out += ':';
        }
        append_hex(out, g[i]);
    }
    return out;
}

Ipv6Address Ipv6Address::parse(std::string_view text)
{
    std::vector<std::uint16_t> groups;
    const auto gap = text.find("::");
    if (gap == std::string_view::npos) {
        groups = parse_groups(text, text);
        if (groups.size() != 8) {
            fail(ErrorKind::Input, "IPv6 address needs 8 groups: '" + std::string(text) + "'");
        }
    } else {
        const auto head = parse_groups(text.substr(0, gap), text);
        const auto tail = parse_groups(text.substr(gap + 2), text);
        if (head.size() + tail.size() > 7 || text.find("::", gap + 1) != std::string_view::npos) {
            fail(ErrorKind::Input, "malformed IPv6 address: '" + std::string(text) + "'");
        }
        groups = head;
        groups.resize(8 - tail.size(), 0);
        groups.insert(groups.end(), tail.begin(), tail.end());
    }

    std::uint64_t high = 0;
    std::uint64_t low = 0;
    for (int i = 0; i < 4; ++i) {
        high = (high << 16) | groups[i];
        low = (low << 16) | groups[i + 4];
    }
    return {high, low};
}

std::string Prefix48::to_string() const
{
    std::string out;
    for (int i = 0; i < 3; ++i) {
        if (i > 0) {
            out += ':';
        }
        append_hex(out, static_cast<std::uint16_t>(bits_ >> (16 * (2 - i))));
    }
    return out;
}

Prefix48 Prefix48::parse(std::string_view text)
{
    std::string_view body = text;
    if (body.ends_with("/48")) {
        body.remove_suffix(3);
    }
    if (body.ends_with("::")) {
        body.remove_suffix(2);
    }
    const auto groups = parse_groups(body, text);
    if (groups.size() != 3) {
        fail(ErrorKind::Input, "a /48 prefix needs exactly 3 groups: '" + std::string(text) + "'");
    }
    return Prefix48((std::uint64_t{groups[0]} << 32) | (std::uint64_t{groups[1]} << 16) | groups[2]);
}

} // namespace clusterbench
