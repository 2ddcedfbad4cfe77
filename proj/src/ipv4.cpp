#include "netscope/ipv4.hpp"

#include <bit>
#include <charconv>
#include <cstdio>

namespace netscope {

std::optional<Ipv4Address> Ipv4Address::parse(std::string_view text) {
    uint32_t value = 0;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    for (int i = 0; i < 4; ++i) {
        unsigned octet = 0;
        auto [next, ec] = std::from_chars(p, end, octet);
        if (ec != std::errc() || next == p || octet > 255) return std::nullopt;
        // reject leading zeros like "01" to keep the format unambiguous
        if (next - p > 1 && *p == '0') return std::nullopt;
        value = (value << 8) | octet;
        p = next;
        if (i < 3) {
            if (p == end || *p != '.') return std::nullopt;
            ++p;
        }
    }
    if (p != end) return std::nullopt;
    return Ipv4Address(value);
}

std::string Ipv4Address::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", octet(0), octet(1), octet(2), octet(3));
    return buf;
}

std::string MacAddress::to_string() const {
    char buf[18];
    std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x", octets[0], octets[1],
                  octets[2], octets[3], octets[4], octets[5]);
    return buf;
}

bool MacAddress::is_broadcast() const {
    for (uint8_t b : octets)
        if (b != 0xFF) return false;
    return true;
}

CidrBlock::CidrBlock(Ipv4Address ip, unsigned prefix_length)
    : network_(ip.value() & prefix_to_mask(prefix_length)), prefix_(prefix_length) {}

std::optional<CidrBlock> CidrBlock::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return std::nullopt;
    auto ip = Ipv4Address::parse(text.substr(0, slash));
    if (!ip) return std::nullopt;
    unsigned prefix = 0;
    auto tail = text.substr(slash + 1);
    auto [next, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), prefix);
    if (ec != std::errc() || next != tail.data() + tail.size() || prefix > 32) return std::nullopt;
    return CidrBlock(*ip, prefix);
}

CidrBlock CidrBlock::smallest_covering(Ipv4Address start, Ipv4Address end) {
    // Longest prefix whose block at `start` still reaches `end`.
    for (unsigned p = 32;; --p) {
        CidrBlock candidate(start, p);
        if (candidate.contains(end) && candidate.contains(start)) return candidate;
        if (p == 0) break;
    }
    return CidrBlock(Ipv4Address(0), 0);
}

std::vector<CidrBlock> CidrBlock::summarize_range(Ipv4Address start, Ipv4Address end) {
    std::vector<CidrBlock> blocks;
    uint64_t cur = start.value();
    const uint64_t last = end.value();
    while (cur <= last) {
        // Largest aligned block starting at cur that stays within [cur, last].
        unsigned max_align = cur == 0 ? 32 : unsigned(std::countr_zero(uint32_t(cur)));
        unsigned prefix = 32;
        for (unsigned host_bits = 0; host_bits <= max_align && host_bits <= 32; ++host_bits) {
            uint64_t block_end = cur + (uint64_t(1) << host_bits) - 1;
            if (block_end > last) break;
            prefix = 32 - host_bits;
        }
        blocks.emplace_back(Ipv4Address(uint32_t(cur)), prefix);
        cur += uint64_t(1) << (32 - prefix);
    }
    return blocks;
}

Ipv4Address CidrBlock::broadcast_address() const {
    return Ipv4Address(network_.value() | ~netmask());
}

uint32_t CidrBlock::netmask() const { return prefix_to_mask(prefix_); }

Ipv4Address CidrBlock::first_usable() const {
    if (prefix_ >= 31) return network_;
    return Ipv4Address(network_.value() + 1);
}

Ipv4Address CidrBlock::last_usable() const {
    if (prefix_ >= 31) return broadcast_address();
    return Ipv4Address(broadcast_address().value() - 1);
}

bool CidrBlock::contains(Ipv4Address ip) const {
    return (ip.value() & netmask()) == network_.value();
}

bool CidrBlock::contains(const CidrBlock& other) const {
    return other.prefix_ >= prefix_ && contains(other.network_);
}

std::string CidrBlock::to_string() const {
    return network_.to_string() + "/" + std::to_string(prefix_);
}

}  // namespace netscope
