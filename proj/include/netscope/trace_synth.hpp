#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "netscope/packet_codec.hpp"
#include "netscope/scope_analyzer.hpp"

namespace netscope {

// One simulated subnet: hosts are drawn inside the block (network, broadcast
// and gateway addresses excluded), each with an initial TTL sampled from
// os_mix (keys restricted to 64/128/255).
struct SubnetSpec {
    CidrBlock cidr;
    std::size_t host_count = 0;
    Ipv4Address gateway;
    std::map<int, double> os_mix = {{64, 0.6}, {128, 0.35}, {255, 0.05}};
};

struct ScenarioSpec {
    uint64_t seed = 0;
    std::vector<SubnetSpec> subnets;
    double arp_request_rate = 0;  // events per simulated second
    double arp_reply_rate = 0;
    double ip_packet_rate = 0;
    double duration_s = 0;
    // share of IP events observed as routed frames (TTL decremented by one);
    // only meaningful with at least two subnets
    double cross_subnet_fraction = 0.2;
};

struct SubnetTruth {
    CidrBlock cidr;
    Ipv4Address gateway;
    std::vector<Ipv4Address> hosts;  // sorted, gateway not included
};

struct ScenarioManifest {
    std::vector<SubnetTruth> subnets;
    uint64_t frame_count = 0;
    // every address that sent at least one frame at an undecremented TTL
    // (or any ARP frame); this is exactly what passive scanning can detect
    std::vector<Ipv4Address> same_segment_senders;
    uint64_t arp_request_frames = 0;
    uint64_t arp_reply_frames = 0;
    uint64_t local_ip_frames = 0;
    uint64_t cross_subnet_ip_frames = 0;
};

struct SynthesizedTrace {
    std::vector<uint8_t> capture;  // complete pcap savefile
    ScenarioManifest manifest;
};

// Deterministic: equal specs produce byte-identical captures. Gateways are
// the only ARP repliers; a positive arp_request_rate schedules at least one
// request per host, a positive arp_reply_rate at least one reply per gateway.
// Throws InvalidSpecError.
SynthesizedTrace synthesize(const ScenarioSpec& spec);

ScenarioSpec scenario_spec_from_json(const std::string& text);
ScenarioSpec load_scenario_spec(const std::string& path);
std::string manifest_to_json(const ScenarioManifest& manifest);

// Wire encoders, also used to round-trip against the decoder. ARP requests go
// out with a broadcast Ethernet destination, replies unicast to the target.
std::vector<uint8_t> encode_arp_frame(ArpOperation op, const MacAddress& sender_mac,
                                      Ipv4Address sender_ip, const MacAddress& target_mac,
                                      Ipv4Address target_ip);
std::vector<uint8_t> encode_ipv4_frame(const MacAddress& src_mac, const MacAddress& dst_mac,
                                       Ipv4Address src_ip, Ipv4Address dst_ip, uint8_t ttl,
                                       uint16_t payload_length = 10, uint16_t identification = 0);

}  // namespace netscope
