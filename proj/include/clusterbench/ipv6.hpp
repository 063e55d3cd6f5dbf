#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace clusterbench {

/// 128-bit IPv6 address held as two host-order 64-bit halves.
class Ipv6Address {
public:
    constexpr Ipv6Address() = default;
    constexpr Ipv6Address(std::uint64_t high, std::uint64_t low) : high_(high), low_(low) {}

    constexpr std::uint64_t high() const noexcept { return high_; }
    constexpr std::uint64_t low() const noexcept { return low_; }

    /// 16-bit group `i` (0 = most significant).
    constexpr std::uint16_t group(int i) const noexcept
    {
        const std::uint64_t half = i < 4 ? high_ : low_;
        return static_cast<std::uint16_t>(half >> (16 * (3 - (i % 4))));
    }

    /// RFC 5952 canonical text: lowercase, no leading zeros, longest zero run (>= 2 groups) as "::".
    std::string to_string() const;

    /// Accepts full and "::"-compressed forms. Throws Error(Input) on malformed text.
    static Ipv6Address parse(std::string_view text);

    friend constexpr auto operator<=>(const Ipv6Address&, const Ipv6Address&) = default;

private:
    std::uint64_t high_ = 0;
    std::uint64_t low_ = 0;
};

/// A /48 routing prefix, e.g. "fd00:0:0".
class Prefix48 {
public:
    constexpr Prefix48() = default;
    constexpr explicit Prefix48(std::uint64_t bits) : bits_(bits & 0xffff'ffff'ffffULL) {}

    constexpr std::uint64_t bits() const noexcept { return bits_; }

    std::string to_string() const;

    /// Three hex groups ("fd00:0:0"), optionally followed by "::" and/or "/48".
    static Prefix48 parse(std::string_view text);

    friend constexpr bool operator==(const Prefix48&, const Prefix48&) = default;

private:
    std::uint64_t bits_ = 0xfd00'0000'0000ULL;
};

} // namespace clusterbench
