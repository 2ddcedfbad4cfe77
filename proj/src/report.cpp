#include "netscope/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace netscope {

namespace {

std::string fixed(double v, int digits = 2) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string ttl_summary(const HostObservation& obs) {
    if (obs.observed_ttls.empty()) return "-";
    std::string out;
    for (const auto& [ttl, count] : obs.observed_ttls) {
        if (!out.empty()) out += ",";
        out += std::to_string(int(ttl));
        if (count > 1) out += "x" + std::to_string(count);
    }
    return out;
}

std::string os_hint(const HostObservation& obs) {
    if (obs.observed_ttls.empty()) return "-";
    // modal observed TTL; ties toward the smaller TTL
    int best_ttl = 0;
    uint64_t best_count = 0;
    for (const auto& [ttl, count] : obs.observed_ttls)
        if (count > best_count) {
            best_ttl = ttl;
            best_count = count;
        }
    return os_family_name(ttl_hint(best_ttl).os_family_hint);
}

const CidrBlock* final_block_for(const ScanPlan& plan, const NetworkRange& range) {
    for (const auto& block : plan.final_ranges)
        if (block.contains(range.start)) return &block;
    return nullptr;
}

}  // namespace

std::string render_report(const RunReport& report) {
    const ScanPlan& plan = report.scan_plan;
    const ObservationSet& obs = plan.observations;
    std::ostringstream out;

    out << "netscope report\n";
    out << "===============\n";
    out << "capture:            " << report.capture_description << "\n";
    out << "termination reason: " << termination_reason_name(obs.termination_reason) << "\n";
    double window_s = double(obs.ended_at_us - obs.started_at_us) / 1e6;
    out << "observation window: " << fixed(window_s) << " s\n";
    out << "detected hosts:     " << obs.detected_host_count() << "\n";
    out << "target-only addrs:  " << obs.target_only_stats.size() << "\n";
    out << "phase timing:       passive " << fixed(report.timings.passive_s) << " s, analysis "
        << fixed(report.timings.analysis_s) << " s\n";

    out << "\ndetermined ranges\n-----------------\n";
    out << "  " << pad("RANGE", 36) << pad("CLASS", 11) << pad("HOSTS", 7) << "FINAL BLOCK\n";
    for (const auto& range : plan.preliminary_ranges) {
        const CidrBlock* block = final_block_for(plan, range);
        out << "  " << pad(range.start.to_string() + "-" + range.end.to_string(), 36)
            << pad(address_class_name(range.cls), 11)
            << pad(std::to_string(range.host_count()), 7)
            << (block ? block->to_string() : "?") << "\n";
    }

    out << "\nown network: " << plan.own_network.to_string() << "\n";
    if (plan.reconfiguration) {
        const auto& cfg = *plan.reconfiguration;
        out << "proposed configuration: ip " << cfg.ip.to_string() << "/" << cfg.prefix_length
            << ", gateway " << cfg.gateway.to_string() << " ("
            << gateway_provenance_name(cfg.gateway_provenance) << ")\n";
    } else {
        out << "existing interface configuration fits; no reconfiguration needed\n";
    }

    out << "\nhosts\n-----\n";
    out << "  " << pad("ADDRESS", 17) << pad("ARP-REQ", 9) << pad("ARP-REP", 9)
        << pad("TARGETED", 10) << pad("IP-PKTS", 9) << pad("TTLS", 12) << "OS HINT\n";
    for (const auto& [ip, host] : obs.hosts) {
        out << "  " << pad(ip.to_string(), 17) << pad(std::to_string(host.arp_requests_sent), 9)
            << pad(std::to_string(host.arp_replies_sent), 9)
            << pad(std::to_string(host.arp_requests_targeting), 10)
            << pad(std::to_string(host.ip_packets_sent), 9) << pad(ttl_summary(host), 12)
            << os_hint(host) << "\n";
    }

    if (report.hopcounts_loaded) {
        out << "\ninternal gateway hint (hopcounts): "
            << (report.internal_gateway_hint ? report.internal_gateway_hint->to_string()
                                             : "none (no unique candidate)")
            << "\n";
    }

    if (!report.warnings.empty()) {
        out << "\nwarnings\n--------\n";
        for (const auto& w : report.warnings) out << "  - " << w << "\n";
    }
    return out.str();
}

}  // namespace netscope
