#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace netscope {

// IPv4 address kept in host byte order so that comparisons and arithmetic
// operate on the numeric 32-bit value.
class Ipv4Address {
public:
    constexpr Ipv4Address() = default;
    constexpr explicit Ipv4Address(uint32_t value) : value_(value) {}

    static constexpr Ipv4Address from_octets(uint8_t a, uint8_t b, uint8_t c, uint8_t d) {
        return Ipv4Address((uint32_t(a) << 24) | (uint32_t(b) << 16) | (uint32_t(c) << 8) | d);
    }

    // Dotted-quad parser; rejects anything but "a.b.c.d" with 0-255 fields.
    static std::optional<Ipv4Address> parse(std::string_view text);

    constexpr uint32_t value() const { return value_; }
    constexpr uint8_t octet(int i) const { return uint8_t(value_ >> (24 - 8 * i)); }

    std::string to_string() const;

    constexpr bool is_unspecified() const { return value_ == 0; }
    constexpr bool is_limited_broadcast() const { return value_ == 0xFFFFFFFFu; }
    constexpr bool is_multicast() const { return (value_ & 0xF0000000u) == 0xE0000000u; }

    constexpr auto operator<=>(const Ipv4Address&) const = default;

private:
    uint32_t value_ = 0;
};

struct MacAddress {
    std::array<uint8_t, 6> octets{};

    std::string to_string() const;
    bool is_broadcast() const;

    auto operator<=>(const MacAddress&) const = default;
};

// Contiguous IPv4 block expressed as base address plus prefix length.
// The base is always masked down to the network address.
class CidrBlock {
public:
    constexpr CidrBlock() = default;
    CidrBlock(Ipv4Address ip, unsigned prefix_length);

    // Parses "a.b.c.d/p". Host bits below the prefix are masked off.
    static std::optional<CidrBlock> parse(std::string_view text);

    // Smallest block containing both span endpoints.
    static CidrBlock smallest_covering(Ipv4Address start, Ipv4Address end);

    // Minimal list of blocks covering exactly [start, end].
    static std::vector<CidrBlock> summarize_range(Ipv4Address start, Ipv4Address end);

    Ipv4Address network_address() const { return network_; }
    Ipv4Address broadcast_address() const;
    unsigned prefix_length() const { return prefix_; }
    uint32_t netmask() const;
    uint64_t size() const { return uint64_t(1) << (32 - prefix_); }

    // Usable host addresses. /31 and /32 have no reserved network/broadcast
    // addresses, so every address in them counts as usable.
    Ipv4Address first_usable() const;
    Ipv4Address last_usable() const;

    bool contains(Ipv4Address ip) const;
    bool contains(const CidrBlock& other) const;

    std::string to_string() const;

    auto operator<=>(const CidrBlock&) const = default;

private:
    Ipv4Address network_{};
    unsigned prefix_ = 0;
};

constexpr uint32_t prefix_to_mask(unsigned prefix_length) {
    return prefix_length == 0 ? 0u : ~uint32_t(0) << (32u - prefix_length);
}

}  // namespace netscope
