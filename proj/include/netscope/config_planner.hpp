#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>

#include "netscope/passive_scanner.hpp"
#include "netscope/scope_analyzer.hpp"

namespace netscope {

// Scanner host interface configuration as found before planning. ip and
// prefix_length are present together or not at all.
struct InterfaceState {
    std::optional<Ipv4Address> ip;
    std::optional<unsigned> prefix_length;
    std::optional<Ipv4Address> gateway;

    bool configured() const { return ip.has_value(); }
};

enum class GatewayProvenance {
    ArpReplySender,
    ArpRequestTarget,
    RangeFirstAddress,
    RangeLastAddress,
};

const char* gateway_provenance_name(GatewayProvenance provenance);

struct ProposedConfig {
    Ipv4Address ip;
    unsigned prefix_length = 0;
    Ipv4Address gateway;
    GatewayProvenance gateway_provenance = GatewayProvenance::RangeFirstAddress;

    bool operator==(const ProposedConfig&) const = default;
};

// The handoff artifact for active scanning: finalized target blocks plus the
// interface configuration to apply (absent when the existing one fits).
struct ScanPlan {
    std::vector<CidrBlock> final_ranges;
    CidrBlock own_network;
    std::optional<ProposedConfig> reconfiguration;
    std::vector<NetworkRange> preliminary_ranges;
    ObservationSet observations;
    int64_t created_at_us = 0;

    bool operator==(const ScanPlan&) const = default;
};

// The unique determined range containing the configured address, if any.
std::optional<NetworkRange> fits_configuration(const InterfaceState& iface,
                                               const std::vector<NetworkRange>& ranges);

// Head of the ordered list; throws NoRangesDeterminedError when empty.
NetworkRange select_own_network(const std::vector<NetworkRange>& ordered);

// First free address inside the observed span; failing that, the closest
// eligible address below the span, then above it. Eligibility excludes
// detected hosts, `reserved`, and the block's network/broadcast addresses.
// Throws NoFreeAddressError when the block is exhausted.
Ipv4Address select_free_ip(const NetworkRange& range, const CidrBlock& finalized_cidr,
                           const std::set<Ipv4Address>& reserved);

// Gateway candidate in three tiers: dominant ARP-reply sender, then dominant
// ARP-request target (host or target-only), then the block's first usable
// address (or last, when the first collides with `avoid`). Ties break to the
// lowest address. Membership is tested against the finalized block.
std::pair<Ipv4Address, GatewayProvenance> determine_gateway(
    const ObservationSet& observations, const NetworkRange& range,
    const CidrBlock& finalized_cidr, std::optional<Ipv4Address> avoid = std::nullopt);

// Snaps preliminary ranges to CIDR blocks: the fitting range takes the
// interface's own mask; every other range takes the smallest covering block
// that stays inside its class segment (decomposed into several exact blocks
// when no such single block exists). Nested blocks are merged.
std::vector<CidrBlock> finalize_ranges(const std::vector<NetworkRange>& preliminary,
                                       const InterfaceState& iface,
                                       const std::optional<NetworkRange>& fit);

// Full decision flow over one observation set. Throws NoRangesDeterminedError
// or NoFreeAddressError; nothing else.
ScanPlan build_scan_plan(const ObservationSet& observations, const ClusteringPolicy& policy,
                         const InterfaceState& iface, int64_t created_at_us);

// Stable serialization of the plan document; equal plans produce identical
// bytes. Readers must ignore fields they do not know.
std::string plan_to_json(const ScanPlan& plan);

}  // namespace netscope
