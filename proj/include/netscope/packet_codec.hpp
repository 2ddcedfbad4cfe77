#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "netscope/ipv4.hpp"

namespace netscope {

// A captured frame as delivered by a capture source. `bytes` may be shorter
// than `original_length` when the capture was truncated by a snap length.
struct RawFrame {
    std::vector<uint8_t> bytes;
    int64_t capture_timestamp_us = 0;
    uint32_t original_length = 0;
};

enum class ArpOperation : uint8_t { Request = 1, Reply = 2 };

struct ArpSummary {
    ArpOperation operation = ArpOperation::Request;
    MacAddress sender_mac;
    Ipv4Address sender_ip;
    MacAddress target_mac;
    Ipv4Address target_ip;
    int64_t timestamp_us = 0;

    bool operator==(const ArpSummary&) const = default;
};

struct IpSummary {
    Ipv4Address source_ip;
    Ipv4Address destination_ip;
    uint8_t ttl = 0;  // header value verbatim, never decremented here
    int64_t timestamp_us = 0;

    bool operator==(const IpSummary&) const = default;
};

struct Ignored {
    bool operator==(const Ignored&) const = default;
};

using DecodedFrame = std::variant<ArpSummary, IpSummary, Ignored>;

// Total over arbitrary input: any byte sequence decodes to exactly one of the
// three alternatives and never reads past frame.bytes. Accepts Ethernet II,
// unwrapping at most one 802.1Q tag; everything else is Ignored.
DecodedFrame decode_frame(const RawFrame& frame);

// Convenience over a borrowed buffer (timestamp carried separately).
DecodedFrame decode_frame(std::span<const uint8_t> bytes, int64_t timestamp_us);

}  // namespace netscope
