#include "netscope/packet_codec.hpp"

namespace netscope {

namespace {

constexpr uint16_t kEtherTypeIpv4 = 0x0800;
constexpr uint16_t kEtherTypeArp = 0x0806;
constexpr uint16_t kEtherTypeVlan = 0x8100;
constexpr size_t kEthernetHeader = 14;
constexpr size_t kArpBody = 28;  // fixed layout for hlen=6 / plen=4

uint16_t read_u16(std::span<const uint8_t> b, size_t off) {
    return uint16_t(b[off]) << 8 | b[off + 1];
}

Ipv4Address read_ip(std::span<const uint8_t> b, size_t off) {
    return Ipv4Address::from_octets(b[off], b[off + 1], b[off + 2], b[off + 3]);
}

MacAddress read_mac(std::span<const uint8_t> b, size_t off) {
    MacAddress mac;
    for (int i = 0; i < 6; ++i) mac.octets[i] = b[off + i];
    return mac;
}

DecodedFrame decode_arp(std::span<const uint8_t> body, int64_t ts) {
    if (body.size() < kArpBody) return Ignored{};
    if (read_u16(body, 0) != 1) return Ignored{};        // hardware: Ethernet
    if (read_u16(body, 2) != kEtherTypeIpv4) return Ignored{};  // protocol: IPv4
    if (body[4] != 6 || body[5] != 4) return Ignored{};  // address lengths
    uint16_t opcode = read_u16(body, 6);
    if (opcode != 1 && opcode != 2) return Ignored{};
    ArpSummary arp;
    arp.operation = opcode == 1 ? ArpOperation::Request : ArpOperation::Reply;
    arp.sender_mac = read_mac(body, 8);
    arp.sender_ip = read_ip(body, 14);
    arp.target_mac = read_mac(body, 18);
    arp.target_ip = read_ip(body, 24);
    arp.timestamp_us = ts;
    return arp;
}

DecodedFrame decode_ipv4(std::span<const uint8_t> body, int64_t ts) {
    if (body.empty()) return Ignored{};
    if (body[0] >> 4 != 4) return Ignored{};
    size_t ihl = body[0] & 0x0F;
    if (ihl < 5) return Ignored{};
    if (body.size() < ihl * 4) return Ignored{};
    IpSummary ip;
    ip.ttl = body[8];
    ip.source_ip = read_ip(body, 12);
    ip.destination_ip = read_ip(body, 16);
    ip.timestamp_us = ts;
    return ip;
}

}  // namespace

DecodedFrame decode_frame(std::span<const uint8_t> bytes, int64_t timestamp_us) {
    if (bytes.size() < kEthernetHeader) return Ignored{};
    uint16_t ether_type = read_u16(bytes, 12);
    std::span<const uint8_t> body = bytes.subspan(kEthernetHeader);
    if (ether_type == kEtherTypeVlan) {
        // one 802.1Q tag: 2 bytes TCI, then the inner EtherType
        if (body.size() < 4) return Ignored{};
        ether_type = read_u16(body, 2);
        if (ether_type == kEtherTypeVlan) return Ignored{};  // deeper tag stacks
        body = body.subspan(4);
    }
    switch (ether_type) {
        case kEtherTypeArp:
            return decode_arp(body, timestamp_us);
        case kEtherTypeIpv4:
            return decode_ipv4(body, timestamp_us);
        default:
            return Ignored{};
    }
}

DecodedFrame decode_frame(const RawFrame& frame) {
    return decode_frame(std::span<const uint8_t>(frame.bytes), frame.capture_timestamp_us);
}

}  // namespace netscope
