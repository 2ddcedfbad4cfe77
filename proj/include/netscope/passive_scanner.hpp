#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <variant>

#include "netscope/capture_source.hpp"
#include "netscope/packet_codec.hpp"

namespace netscope {

enum class CaptureMode { ArpOnly, IpOnly, Both };

struct LiveInterface {
    std::string name;
};
struct TraceFile {
    std::string path;
};
using CaptureSourceSpec = std::variant<LiveInterface, TraceFile>;

struct CaptureConfig {
    CaptureSourceSpec source = TraceFile{};
    CaptureMode mode = CaptureMode::Both;
    std::set<uint8_t> accepted_ttls = {1, 64, 128};
    double duration_timeout_s = 300.0;
    std::size_t host_threshold = 10;
    bool promiscuous = true;
};

// Per-address accumulator of sender evidence. An address gets an entry here
// only once it has been seen *sending* (ARP sender or IP source).
struct HostObservation {
    Ipv4Address ip;
    std::set<MacAddress> macs;
    uint64_t arp_requests_sent = 0;
    uint64_t arp_replies_sent = 0;
    uint64_t arp_requests_targeting = 0;  // times this IP was an ARP request's target
    uint64_t ip_packets_sent = 0;
    std::map<uint8_t, uint64_t> observed_ttls;  // ttl -> occurrences
    int64_t first_seen_us = 0;
    int64_t last_seen_us = 0;

    bool operator==(const HostObservation&) const = default;
};

enum class TerminationReason { Timeout, ThresholdReached, SourceExhausted };

const char* termination_reason_name(TerminationReason reason);

struct ObservationSet {
    std::map<Ipv4Address, HostObservation> hosts;
    // addresses seen only as ARP request targets; promoted (count carried
    // over) the moment they send anything themselves
    std::map<Ipv4Address, uint64_t> target_only_stats;
    int64_t started_at_us = 0;
    int64_t ended_at_us = 0;
    TerminationReason termination_reason = TerminationReason::SourceExhausted;

    std::size_t detected_host_count() const { return hosts.size(); }

    bool operator==(const ObservationSet&) const = default;
};

// Storable-as-host predicate: unicast only. 0.0.0.0, 255.255.255.255 and
// multicast never become host entries or target statistics.
bool is_storable_host_address(Ipv4Address ip);

bool admit(const ArpSummary& summary, const CaptureConfig& config);
bool admit(const IpSummary& summary, const CaptureConfig& config);

void observe(ObservationSet& set, const ArpSummary& summary);
void observe(ObservationSet& set, const IpSummary& summary);

// Single-writer capture loop with thread-safe snapshots and cooperative
// cancellation. request_stop() ends the run at the next frame boundary and
// reports it as a Timeout; accumulated observations are kept.
class PassiveScanSession {
public:
    explicit PassiveScanSession(CaptureConfig config);

    ObservationSet run(FrameSource& source);
    ObservationSet snapshot() const;
    void request_stop();

private:
    CaptureConfig config_;
    mutable std::mutex mutex_;
    ObservationSet set_;
    std::atomic<bool> stop_{false};
};

// Opens the configured source and drives a session over it.
ObservationSet run_passive_phase(const CaptureConfig& config);
ObservationSet run_passive_phase(const CaptureConfig& config, FrameSource& source);

std::unique_ptr<FrameSource> open_capture_source(const CaptureConfig& config);

}  // namespace netscope
