#include "netscope/trace_synth.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "netscope/errors.hpp"
#include "netscope/pcap_file.hpp"

namespace netscope {

namespace {

constexpr int64_t kEpochUs = int64_t(1700000000) * 1'000'000;
constexpr size_t kMinEthernetFrame = 60;  // without FCS
constexpr uint64_t kMaxMaterializedBlock = uint64_t(1) << 20;

// All randomness goes through these helpers so output bytes do not depend on
// the standard library's distribution implementations.
uint64_t draw(std::mt19937_64& rng, uint64_t bound) { return rng() % bound; }

double draw_unit(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

MacAddress mac_for(Ipv4Address ip) {
    // locally administered, derived from the address itself
    return MacAddress{{0x02, 0x4e, ip.octet(0), ip.octet(1), ip.octet(2), ip.octet(3)}};
}

void append_be16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(uint8_t(v >> 8));
    out.push_back(uint8_t(v));
}

void append_ip(std::vector<uint8_t>& out, Ipv4Address ip) {
    for (int i = 0; i < 4; ++i) out.push_back(ip.octet(i));
}

void append_mac(std::vector<uint8_t>& out, const MacAddress& mac) {
    out.insert(out.end(), mac.octets.begin(), mac.octets.end());
}

struct SimHost {
    Ipv4Address ip;
    MacAddress mac;
    int initial_ttl = 64;
    std::size_t subnet = 0;
};

struct Event {
    int64_t timestamp_us = 0;
    uint64_t seq = 0;
    std::vector<uint8_t> frame;
    bool arp_request = false;
    bool arp_reply = false;
    bool local_ip = false;
    bool cross_ip = false;
    Ipv4Address sender;
    bool same_segment = false;
};

void validate(const ScenarioSpec& spec) {
    if (spec.duration_s < 0) throw InvalidSpecError("duration must be >= 0");
    if (spec.arp_request_rate < 0 || spec.arp_reply_rate < 0 || spec.ip_packet_rate < 0)
        throw InvalidSpecError("event rates must be >= 0");
    if (spec.cross_subnet_fraction < 0 || spec.cross_subnet_fraction > 1)
        throw InvalidSpecError("cross_subnet_fraction must be within [0, 1]");
    for (const auto& subnet : spec.subnets) {
        if (subnet.cidr.prefix_length() > 30)
            throw InvalidSpecError("subnet " + subnet.cidr.to_string() + " is too small");
        if (!subnet.cidr.contains(subnet.gateway) ||
            subnet.gateway == subnet.cidr.network_address() ||
            subnet.gateway == subnet.cidr.broadcast_address())
            throw InvalidSpecError("gateway " + subnet.gateway.to_string() +
                                   " is not a usable address of " + subnet.cidr.to_string());
        uint64_t usable = subnet.cidr.size() - 2 - 1;  // network, broadcast, gateway
        if (subnet.host_count > usable)
            throw InvalidSpecError(subnet.cidr.to_string() + " cannot hold " +
                                   std::to_string(subnet.host_count) + " hosts");
        if (subnet.host_count > 0 && subnet.cidr.size() > kMaxMaterializedBlock)
            throw InvalidSpecError("subnet " + subnet.cidr.to_string() +
                                   " is larger than the generator supports");
        if (subnet.os_mix.empty()) throw InvalidSpecError("os_mix must not be empty");
        double total = 0;
        for (const auto& [ttl, weight] : subnet.os_mix) {
            if (ttl != 64 && ttl != 128 && ttl != 255)
                throw InvalidSpecError("os_mix keys must be 64, 128 or 255");
            if (weight < 0) throw InvalidSpecError("os_mix weights must be >= 0");
            total += weight;
        }
        if (total <= 0) throw InvalidSpecError("os_mix weights must not all be zero");
    }
}

std::vector<Ipv4Address> draw_hosts(std::mt19937_64& rng, const SubnetSpec& subnet) {
    std::vector<Ipv4Address> pool;
    for (uint64_t v = subnet.cidr.first_usable().value(); v <= subnet.cidr.last_usable().value();
         ++v)
        if (Ipv4Address(uint32_t(v)) != subnet.gateway) pool.emplace_back(uint32_t(v));
    // partial Fisher-Yates: the first host_count slots end up with the draw
    for (std::size_t i = 0; i < subnet.host_count; ++i)
        std::swap(pool[i], pool[i + draw(rng, pool.size() - i)]);
    pool.resize(subnet.host_count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

int sample_initial_ttl(std::mt19937_64& rng, const std::map<int, double>& os_mix) {
    double total = 0;
    for (const auto& [ttl, weight] : os_mix) total += weight;
    double u = draw_unit(rng) * total;
    for (const auto& [ttl, weight] : os_mix) {
        if (u < weight) return ttl;
        u -= weight;
    }
    return os_mix.rbegin()->first;
}

}  // namespace

std::vector<uint8_t> encode_arp_frame(ArpOperation op, const MacAddress& sender_mac,
                                      Ipv4Address sender_ip, const MacAddress& target_mac,
                                      Ipv4Address target_ip) {
    std::vector<uint8_t> f;
    f.reserve(42);
    if (op == ArpOperation::Request)
        append_mac(f, MacAddress{{0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF}});
    else
        append_mac(f, target_mac);
    append_mac(f, sender_mac);
    append_be16(f, 0x0806);
    append_be16(f, 1);       // hardware: Ethernet
    append_be16(f, 0x0800);  // protocol: IPv4
    f.push_back(6);
    f.push_back(4);
    append_be16(f, op == ArpOperation::Request ? 1 : 2);
    append_mac(f, sender_mac);
    append_ip(f, sender_ip);
    append_mac(f, target_mac);
    append_ip(f, target_ip);
    return f;
}

std::vector<uint8_t> encode_ipv4_frame(const MacAddress& src_mac, const MacAddress& dst_mac,
                                       Ipv4Address src_ip, Ipv4Address dst_ip, uint8_t ttl,
                                       uint16_t payload_length, uint16_t identification) {
    std::vector<uint8_t> f;
    f.reserve(14 + 20 + payload_length);
    append_mac(f, dst_mac);
    append_mac(f, src_mac);
    append_be16(f, 0x0800);

    const size_t ip_start = f.size();
    f.push_back(0x45);  // version 4, IHL 5
    f.push_back(0);
    append_be16(f, uint16_t(20 + payload_length));
    append_be16(f, identification);
    append_be16(f, 0);  // flags/fragment offset
    f.push_back(ttl);
    f.push_back(253);   // protocol: experimental
    append_be16(f, 0);  // checksum placeholder
    append_ip(f, src_ip);
    append_ip(f, dst_ip);

    uint32_t sum = 0;
    for (size_t i = ip_start; i < ip_start + 20; i += 2)
        sum += uint32_t(f[i]) << 8 | f[i + 1];
    while (sum >> 16) sum = (sum & 0xFFFF) + (sum >> 16);
    uint16_t checksum = uint16_t(~sum);
    f[ip_start + 10] = uint8_t(checksum >> 8);
    f[ip_start + 11] = uint8_t(checksum);

    f.insert(f.end(), payload_length, 0);
    return f;
}

SynthesizedTrace synthesize(const ScenarioSpec& spec) {
    validate(spec);
    std::mt19937_64 rng(spec.seed);

    SynthesizedTrace out;
    std::vector<SimHost> hosts;
    std::vector<SimHost> gateways;
    for (std::size_t si = 0; si < spec.subnets.size(); ++si) {
        const auto& subnet = spec.subnets[si];
        SubnetTruth truth;
        truth.cidr = subnet.cidr;
        truth.gateway = subnet.gateway;
        truth.hosts = draw_hosts(rng, subnet);
        for (Ipv4Address ip : truth.hosts)
            hosts.push_back({ip, mac_for(ip), sample_initial_ttl(rng, subnet.os_mix), si});
        gateways.push_back({subnet.gateway, mac_for(subnet.gateway), 255, si});
        out.manifest.subnets.push_back(std::move(truth));
    }

    std::vector<std::size_t> hosts_of_subnet_begin(spec.subnets.size() + 1, 0);
    {
        std::size_t idx = 0;
        for (std::size_t si = 0; si < spec.subnets.size(); ++si) {
            hosts_of_subnet_begin[si] = idx;
            idx += spec.subnets[si].host_count;
        }
        hosts_of_subnet_begin[spec.subnets.size()] = idx;
    }
    auto random_host_in = [&](std::mt19937_64& r, std::size_t si) -> const SimHost& {
        std::size_t lo = hosts_of_subnet_begin[si], hi = hosts_of_subnet_begin[si + 1];
        return hosts[lo + draw(r, hi - lo)];
    };

    const int64_t duration_us = int64_t(spec.duration_s * 1e6);
    std::vector<Event> events;
    uint64_t seq = 0;
    auto schedule = [&](std::vector<uint8_t> frame, Event base) {
        base.timestamp_us = kEpochUs + (duration_us > 0 ? int64_t(draw(rng, uint64_t(duration_us)))
                                                        : 0);
        base.seq = seq++;
        base.frame = std::move(frame);
        events.push_back(std::move(base));
    };

    auto event_count = [&](double rate) -> uint64_t {
        return uint64_t(rate * spec.duration_s + 0.5);
    };

    // ARP requests: one guaranteed per host, the rest drawn at random.
    // Targets are mostly the subnet gateway, occasionally another host.
    if (spec.arp_request_rate > 0 && !hosts.empty()) {
        uint64_t n = std::max<uint64_t>(event_count(spec.arp_request_rate), hosts.size());
        for (uint64_t i = 0; i < n; ++i) {
            const SimHost& sender =
                i < hosts.size() ? hosts[i] : hosts[draw(rng, hosts.size())];
            Ipv4Address target = gateways[sender.subnet].ip;
            if (draw_unit(rng) < 0.2) target = random_host_in(rng, sender.subnet).ip;
            Event ev;
            ev.arp_request = true;
            ev.sender = sender.ip;
            ev.same_segment = true;
            schedule(encode_arp_frame(ArpOperation::Request, sender.mac, sender.ip,
                                      MacAddress{}, target),
                     std::move(ev));
        }
    }

    // ARP replies come from gateways only: one guaranteed per gateway.
    if (spec.arp_reply_rate > 0 && !gateways.empty() && !hosts.empty()) {
        uint64_t n = std::max<uint64_t>(event_count(spec.arp_reply_rate), gateways.size());
        for (uint64_t i = 0; i < n; ++i) {
            const SimHost& gw =
                i < gateways.size() ? gateways[i] : gateways[draw(rng, gateways.size())];
            if (hosts_of_subnet_begin[gw.subnet + 1] == hosts_of_subnet_begin[gw.subnet])
                continue;
            const SimHost& asker = random_host_in(rng, gw.subnet);
            Event ev;
            ev.arp_reply = true;
            ev.sender = gw.ip;
            ev.same_segment = true;
            schedule(encode_arp_frame(ArpOperation::Reply, gw.mac, gw.ip, asker.mac, asker.ip),
                     std::move(ev));
        }
    }

    // IP traffic: local frames carry the sender's initial TTL; routed frames
    // show up with TTL decremented by the one hop and the router's MAC.
    if (spec.ip_packet_rate > 0 && !hosts.empty()) {
        uint64_t n = event_count(spec.ip_packet_rate);
        uint16_t ident = 0;
        for (uint64_t i = 0; i < n; ++i) {
            const SimHost& sender = hosts[draw(rng, hosts.size())];
            bool cross = spec.subnets.size() > 1 && draw_unit(rng) < spec.cross_subnet_fraction;
            Event ev;
            ev.sender = sender.ip;
            if (cross) {
                std::size_t other = draw(rng, spec.subnets.size() - 1);
                if (other >= sender.subnet) ++other;
                if (hosts_of_subnet_begin[other + 1] == hosts_of_subnet_begin[other]) {
                    cross = false;
                } else {
                    const SimHost& dest = random_host_in(rng, other);
                    ev.cross_ip = true;
                    ev.same_segment = false;
                    schedule(encode_ipv4_frame(gateways[other].mac, dest.mac, sender.ip,
                                               dest.ip, uint8_t(sender.initial_ttl - 1), 10,
                                               ident++),
                             std::move(ev));
                }
            }
            if (!cross) {
                const SimHost& dest = random_host_in(rng, sender.subnet);
                ev.local_ip = true;
                ev.same_segment = true;
                schedule(encode_ipv4_frame(sender.mac, dest.mac, sender.ip, dest.ip,
                                           uint8_t(sender.initial_ttl), 10, ident++),
                         std::move(ev));
            }
        }
    }

    std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.timestamp_us != b.timestamp_us) return a.timestamp_us < b.timestamp_us;
        return a.seq < b.seq;
    });

    std::ostringstream sink(std::ios::binary);
    PcapWriter writer(sink);
    std::set<Ipv4Address> same_segment;
    for (auto& ev : events) {
        RawFrame frame;
        frame.bytes = std::move(ev.frame);
        if (frame.bytes.size() < kMinEthernetFrame) frame.bytes.resize(kMinEthernetFrame, 0);
        frame.original_length = uint32_t(frame.bytes.size());
        frame.capture_timestamp_us = ev.timestamp_us;
        writer.write(frame);

        ++out.manifest.frame_count;
        if (ev.arp_request) ++out.manifest.arp_request_frames;
        if (ev.arp_reply) ++out.manifest.arp_reply_frames;
        if (ev.local_ip) ++out.manifest.local_ip_frames;
        if (ev.cross_ip) ++out.manifest.cross_subnet_ip_frames;
        if (ev.same_segment) same_segment.insert(ev.sender);
    }
    out.manifest.same_segment_senders.assign(same_segment.begin(), same_segment.end());

    std::string bytes = sink.str();
    out.capture.assign(bytes.begin(), bytes.end());
    return out;
}

ScenarioSpec scenario_spec_from_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw InvalidSpecError("scenario spec must be a JSON object");

    ScenarioSpec spec;
    try {
        spec.seed = doc.value("seed", uint64_t(0));
        spec.duration_s = doc.value("duration", 0.0);
        spec.arp_request_rate = doc.value("arp_request_rate", 0.0);
        spec.arp_reply_rate = doc.value("arp_reply_rate", 0.0);
        spec.ip_packet_rate = doc.value("ip_packet_rate", 0.0);
        spec.cross_subnet_fraction = doc.value("cross_subnet_fraction", 0.2);
        for (const auto& entry : doc.value("subnets", nlohmann::json::array())) {
            SubnetSpec subnet;
            auto cidr = CidrBlock::parse(entry.value("cidr", ""));
            if (!cidr) throw InvalidSpecError("subnet needs a valid \"cidr\"");
            subnet.cidr = *cidr;
            subnet.host_count = entry.value("host_count", std::size_t(0));
            auto gateway = Ipv4Address::parse(entry.value("gateway", ""));
            if (!gateway) throw InvalidSpecError("subnet needs a valid \"gateway\"");
            subnet.gateway = *gateway;
            if (entry.contains("os_mix")) {
                subnet.os_mix.clear();
                for (const auto& [key, weight] : entry.at("os_mix").items())
                    subnet.os_mix[std::stoi(key)] = weight.get<double>();
            }
            spec.subnets.push_back(std::move(subnet));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidSpecError(std::string("scenario spec: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw InvalidSpecError("scenario spec: os_mix keys must be integers");
    }
    return spec;
}

ScenarioSpec load_scenario_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw SourceOpenError("cannot open scenario spec '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return scenario_spec_from_json(text);
}

std::string manifest_to_json(const ScenarioManifest& manifest) {
    nlohmann::json doc;
    auto& subnets = doc["subnets"] = nlohmann::json::array();
    for (const auto& truth : manifest.subnets) {
        nlohmann::json entry;
        entry["cidr"] = truth.cidr.to_string();
        entry["gateway"] = truth.gateway.to_string();
        auto& list = entry["hosts"] = nlohmann::json::array();
        for (Ipv4Address ip : truth.hosts) list.push_back(ip.to_string());
        subnets.push_back(std::move(entry));
    }
    doc["frame_count"] = manifest.frame_count;
    auto& senders = doc["same_segment_senders"] = nlohmann::json::array();
    for (Ipv4Address ip : manifest.same_segment_senders) senders.push_back(ip.to_string());
    doc["arp_request_frames"] = manifest.arp_request_frames;
    doc["arp_reply_frames"] = manifest.arp_reply_frames;
    doc["local_ip_frames"] = manifest.local_ip_frames;
    doc["cross_subnet_ip_frames"] = manifest.cross_subnet_ip_frames;
    return doc.dump(2) + "\n";
}

}  // namespace netscope
