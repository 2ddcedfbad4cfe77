#include "netscope/config_planner.hpp"

#include <algorithm>
#include <cassert>

#include "json.hpp"
#include "netscope/errors.hpp"

namespace netscope {

namespace {

bool block_within_segment(const CidrBlock& block, const ClassSegment& segment) {
    return block.network_address() >= segment.low && block.broadcast_address() <= segment.high;
}

// Final block(s) for a non-fitting preliminary range.
std::vector<CidrBlock> snap_range(const NetworkRange& range) {
    CidrBlock covering = CidrBlock::smallest_covering(range.start, range.end);
    if (block_within_segment(covering, class_segment_of(range.start))) return {covering};
    // No single covering block stays inside the class segment; cover the
    // observed span exactly instead.
    return CidrBlock::summarize_range(range.start, range.end);
}

std::vector<CidrBlock> merge_nested(std::vector<CidrBlock> blocks) {
    std::sort(blocks.begin(), blocks.end(), [](const CidrBlock& a, const CidrBlock& b) {
        if (a.network_address() != b.network_address())
            return a.network_address() < b.network_address();
        return a.prefix_length() < b.prefix_length();  // container first
    });
    std::vector<CidrBlock> merged;
    for (const auto& block : blocks) {
        if (!merged.empty() && merged.back().contains(block)) continue;
        merged.push_back(block);
    }
    return merged;
}

// Restrict a range to the hosts falling inside one block (used when a range
// was decomposed into several final blocks).
NetworkRange clip_range_to_block(const NetworkRange& range, const CidrBlock& block) {
    NetworkRange clipped;
    clipped.cls = range.cls;
    for (Ipv4Address host : range.detected_hosts)
        if (block.contains(host)) clipped.detected_hosts.push_back(host);
    assert(!clipped.detected_hosts.empty());
    clipped.start = clipped.detected_hosts.front();
    clipped.end = clipped.detected_hosts.back();
    return clipped;
}

const CidrBlock& block_containing(const std::vector<CidrBlock>& blocks, Ipv4Address ip) {
    for (const auto& block : blocks)
        if (block.contains(ip)) return block;
    assert(false && "finalized blocks cover every detected host");
    return blocks.front();
}

// Of the final blocks, the one holding the most of the range's hosts
// (ties to the lowest network address; blocks arrive sorted).
const CidrBlock& dominant_block(const std::vector<CidrBlock>& blocks, const NetworkRange& range) {
    const CidrBlock* best = nullptr;
    std::size_t best_count = 0;
    for (const auto& block : blocks) {
        std::size_t count = 0;
        for (Ipv4Address host : range.detected_hosts)
            if (block.contains(host)) ++count;
        if (count > best_count) {
            best = &block;
            best_count = count;
        }
    }
    assert(best);
    return *best;
}

}  // namespace

const char* gateway_provenance_name(GatewayProvenance provenance) {
    switch (provenance) {
        case GatewayProvenance::ArpReplySender: return "ArpReplySender";
        case GatewayProvenance::ArpRequestTarget: return "ArpRequestTarget";
        case GatewayProvenance::RangeFirstAddress: return "RangeFirstAddress";
        case GatewayProvenance::RangeLastAddress: return "RangeLastAddress";
    }
    return "?";
}

std::optional<NetworkRange> fits_configuration(const InterfaceState& iface,
                                               const std::vector<NetworkRange>& ranges) {
    if (!iface.configured()) return std::nullopt;
    for (const auto& range : ranges)
        if (range.contains(*iface.ip)) return range;
    return std::nullopt;
}

NetworkRange select_own_network(const std::vector<NetworkRange>& ordered) {
    if (ordered.empty())
        throw NoRangesDeterminedError("no network ranges were determined");
    return ordered.front();
}

Ipv4Address select_free_ip(const NetworkRange& range, const CidrBlock& finalized_cidr,
                           const std::set<Ipv4Address>& reserved) {
    if (!finalized_cidr.contains(range.start) || !finalized_cidr.contains(range.end))
        throw std::invalid_argument("finalized block does not cover the range");

    auto eligible = [&](Ipv4Address a) {
        return finalized_cidr.contains(a) && a != finalized_cidr.network_address() &&
               a != finalized_cidr.broadcast_address() && reserved.count(a) == 0 &&
               !std::binary_search(range.detected_hosts.begin(), range.detected_hosts.end(), a);
    };

    // first gap strictly between the lowest and highest detected hosts
    for (uint64_t v = uint64_t(range.start.value()) + 1; v < range.end.value(); ++v)
        if (eligible(Ipv4Address(uint32_t(v)))) return Ipv4Address(uint32_t(v));

    // before the first host, closest first
    for (int64_t v = int64_t(range.start.value()) - 1;
         v >= int64_t(finalized_cidr.network_address().value()); --v)
        if (eligible(Ipv4Address(uint32_t(v)))) return Ipv4Address(uint32_t(v));

    // behind the last host
    for (uint64_t v = uint64_t(range.end.value()) + 1;
         v <= finalized_cidr.broadcast_address().value(); ++v)
        if (eligible(Ipv4Address(uint32_t(v)))) return Ipv4Address(uint32_t(v));

    throw NoFreeAddressError("no free address in " + finalized_cidr.to_string());
}

std::pair<Ipv4Address, GatewayProvenance> determine_gateway(
    const ObservationSet& observations, const NetworkRange& range,
    const CidrBlock& finalized_cidr, std::optional<Ipv4Address> avoid) {
    if (!finalized_cidr.contains(range.start) || !finalized_cidr.contains(range.end))
        throw std::invalid_argument("finalized block does not cover the range");

    // Tier 1: dominant ARP-reply sender. Map order makes ties resolve to the
    // lowest address.
    const HostObservation* best = nullptr;
    for (const auto& [ip, obs] : observations.hosts) {
        if (!finalized_cidr.contains(ip) || obs.arp_replies_sent == 0) continue;
        if (!best || obs.arp_replies_sent > best->arp_replies_sent) best = &obs;
    }
    if (best) return {best->ip, GatewayProvenance::ArpReplySender};

    // Tier 2: dominant ARP-request target, over hosts and target-only stats.
    std::optional<Ipv4Address> target;
    uint64_t target_count = 0;
    auto consider = [&](Ipv4Address ip, uint64_t count) {
        if (count == 0 || !finalized_cidr.contains(ip)) return;
        if (!target || count > target_count || (count == target_count && ip < *target)) {
            target = ip;
            target_count = count;
        }
    };
    for (const auto& [ip, obs] : observations.hosts) consider(ip, obs.arp_requests_targeting);
    for (const auto& [ip, count] : observations.target_only_stats) consider(ip, count);
    if (target) return {*target, GatewayProvenance::ArpRequestTarget};

    // Tier 3: conventional candidates from the block itself.
    Ipv4Address first = finalized_cidr.first_usable();
    if (avoid && first == *avoid)
        return {finalized_cidr.last_usable(), GatewayProvenance::RangeLastAddress};
    return {first, GatewayProvenance::RangeFirstAddress};
}

std::vector<CidrBlock> finalize_ranges(const std::vector<NetworkRange>& preliminary,
                                       const InterfaceState& iface,
                                       const std::optional<NetworkRange>& fit) {
    std::vector<CidrBlock> blocks;
    for (const auto& range : preliminary) {
        if (fit && range == *fit) {
            blocks.emplace_back(*iface.ip, *iface.prefix_length);
            continue;
        }
        auto snapped = snap_range(range);
        blocks.insert(blocks.end(), snapped.begin(), snapped.end());
    }
    return merge_nested(blocks);
}

ScanPlan build_scan_plan(const ObservationSet& observations, const ClusteringPolicy& policy,
                         const InterfaceState& iface, int64_t created_at_us) {
    if (observations.hosts.empty())
        throw NoRangesDeterminedError("passive phase observed no hosts");

    std::vector<Ipv4Address> addresses;
    addresses.reserve(observations.hosts.size());
    for (const auto& [ip, obs] : observations.hosts) addresses.push_back(ip);

    auto ordered = order_ranges(cluster(std::move(addresses), policy));
    auto fit = fits_configuration(iface, ordered);

    ScanPlan plan;
    plan.final_ranges = finalize_ranges(ordered, iface, fit);
    plan.preliminary_ranges = ordered;
    plan.observations = observations;
    plan.created_at_us = created_at_us;

    if (fit) {
        plan.own_network = block_containing(plan.final_ranges, *iface.ip);
        return plan;
    }

    NetworkRange own = select_own_network(ordered);
    CidrBlock own_block = dominant_block(plan.final_ranges, own);
    if (!own_block.contains(own.start) || !own_block.contains(own.end))
        own = clip_range_to_block(own, own_block);

    auto [gateway, provenance] = determine_gateway(observations, own, own_block);

    std::set<Ipv4Address> reserved{gateway};
    for (const auto& [ip, obs] : observations.hosts)
        if (own_block.contains(ip)) reserved.insert(ip);

    ProposedConfig config;
    config.ip = select_free_ip(own, own_block, reserved);
    config.prefix_length = own_block.prefix_length();
    config.gateway = gateway;
    config.gateway_provenance = provenance;

    plan.own_network = own_block;
    plan.reconfiguration = config;
    return plan;
}

std::string plan_to_json(const ScanPlan& plan) {
    nlohmann::json doc;
    doc["created_at_us"] = plan.created_at_us;

    auto& finals = doc["final_ranges"] = nlohmann::json::array();
    for (const auto& block : plan.final_ranges) finals.push_back(block.to_string());

    auto& prelim = doc["preliminary_ranges"] = nlohmann::json::array();
    for (const auto& range : plan.preliminary_ranges)
        prelim.push_back(range.start.to_string() + "-" + range.end.to_string());

    doc["own_network"] = plan.own_network.to_string();
    doc["reconfiguration_required"] = plan.reconfiguration.has_value();
    if (plan.reconfiguration) {
        doc["proposed_ip"] = plan.reconfiguration->ip.to_string();
        doc["proposed_prefix_length"] = plan.reconfiguration->prefix_length;
        doc["proposed_gateway"] = plan.reconfiguration->gateway.to_string();
        doc["gateway_provenance"] =
            gateway_provenance_name(plan.reconfiguration->gateway_provenance);
    }
    doc["termination_reason"] = termination_reason_name(plan.observations.termination_reason);

    auto& hosts = doc["detected_hosts"] = nlohmann::json::object();
    for (const auto& [ip, obs] : plan.observations.hosts) {
        hosts[ip.to_string()] = {
            {"arp_requests_sent", obs.arp_requests_sent},
            {"arp_replies_sent", obs.arp_replies_sent},
            {"arp_requests_targeting", obs.arp_requests_targeting},
            {"ip_packets_sent", obs.ip_packets_sent},
        };
    }

    return doc.dump(2) + "\n";
}

}  // namespace netscope
