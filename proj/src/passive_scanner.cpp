#include "netscope/passive_scanner.hpp"

#include <chrono>
#include <stdexcept>

#include "netscope/errors.hpp"

namespace netscope {

namespace {

using Clock = std::chrono::steady_clock;

int64_t wall_clock_us() {
    return std::chrono::duration_cast<std::chrono::microseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

void validate(const CaptureConfig& config) {
    if (config.mode != CaptureMode::ArpOnly && config.accepted_ttls.empty())
        throw std::invalid_argument("accepted_ttls must be non-empty unless mode is ArpOnly");
    if (config.duration_timeout_s <= 0)
        throw std::invalid_argument("duration_timeout must be positive");
    if (config.host_threshold == 0)
        throw std::invalid_argument("host_threshold must be positive");
}

HostObservation& sender_entry(ObservationSet& set, Ipv4Address ip, int64_t ts) {
    auto [it, inserted] = set.hosts.try_emplace(ip);
    HostObservation& obs = it->second;
    if (inserted) {
        obs.ip = ip;
        obs.first_seen_us = ts;
        // an address promoted from target-only carries its count along
        if (auto t = set.target_only_stats.find(ip); t != set.target_only_stats.end()) {
            obs.arp_requests_targeting = t->second;
            set.target_only_stats.erase(t);
        }
    }
    obs.last_seen_us = ts;
    return obs;
}

}  // namespace

const char* termination_reason_name(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::Timeout: return "Timeout";
        case TerminationReason::ThresholdReached: return "ThresholdReached";
        case TerminationReason::SourceExhausted: return "SourceExhausted";
    }
    return "?";
}

bool is_storable_host_address(Ipv4Address ip) {
    return !ip.is_unspecified() && !ip.is_limited_broadcast() && !ip.is_multicast();
}

bool admit(const ArpSummary&, const CaptureConfig& config) {
    return config.mode == CaptureMode::ArpOnly || config.mode == CaptureMode::Both;
}

bool admit(const IpSummary& summary, const CaptureConfig& config) {
    return (config.mode == CaptureMode::IpOnly || config.mode == CaptureMode::Both) &&
           config.accepted_ttls.count(summary.ttl) > 0;
}

void observe(ObservationSet& set, const ArpSummary& summary) {
    if (is_storable_host_address(summary.sender_ip)) {
        HostObservation& obs = sender_entry(set, summary.sender_ip, summary.timestamp_us);
        if (summary.operation == ArpOperation::Request)
            ++obs.arp_requests_sent;
        else
            ++obs.arp_replies_sent;
        obs.macs.insert(summary.sender_mac);
    }
    if (summary.operation == ArpOperation::Request &&
        is_storable_host_address(summary.target_ip)) {
        if (auto it = set.hosts.find(summary.target_ip); it != set.hosts.end())
            ++it->second.arp_requests_targeting;
        else
            ++set.target_only_stats[summary.target_ip];
    }
}

void observe(ObservationSet& set, const IpSummary& summary) {
    if (!is_storable_host_address(summary.source_ip)) return;
    HostObservation& obs = sender_entry(set, summary.source_ip, summary.timestamp_us);
    ++obs.ip_packets_sent;
    ++obs.observed_ttls[summary.ttl];
}

PassiveScanSession::PassiveScanSession(CaptureConfig config) : config_(std::move(config)) {}

ObservationSet PassiveScanSession::snapshot() const {
    std::lock_guard lock(mutex_);
    return set_;
}

void PassiveScanSession::request_stop() { stop_.store(true, std::memory_order_relaxed); }

ObservationSet PassiveScanSession::run(FrameSource& source) {
    validate(config_);
    const auto timeout_us = int64_t(config_.duration_timeout_s * 1e6);
    const bool replay = source.timestamps_are_authoritative();
    const auto wall_start = Clock::now();

    if (!replay) {
        std::lock_guard lock(mutex_);
        set_.started_at_us = set_.ended_at_us = wall_clock_us();
    }

    bool have_first_timestamp = false;
    int64_t first_timestamp_us = 0;

    auto finish = [&](TerminationReason reason) {
        std::lock_guard lock(mutex_);
        set_.termination_reason = reason;
        if (!replay) set_.ended_at_us = wall_clock_us();
        return set_;
    };

    for (;;) {
        if (stop_.load(std::memory_order_relaxed)) return finish(TerminationReason::Timeout);
        if (!replay) {
            auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() -
                                                                                  wall_start);
            if (elapsed.count() >= timeout_us) return finish(TerminationReason::Timeout);
        }

        RawFrame frame;
        switch (source.poll(frame, std::chrono::milliseconds(100))) {
            case PollStatus::End:
                return finish(TerminationReason::SourceExhausted);
            case PollStatus::Idle:
                continue;
            case PollStatus::Frame:
                break;
        }

        if (replay) {
            if (!have_first_timestamp) {
                have_first_timestamp = true;
                first_timestamp_us = frame.capture_timestamp_us;
                std::lock_guard lock(mutex_);
                set_.started_at_us = set_.ended_at_us = first_timestamp_us;
            }
            // replay time is capture time; frames past the window are not processed
            if (frame.capture_timestamp_us - first_timestamp_us >= timeout_us)
                return finish(TerminationReason::Timeout);
        }

        DecodedFrame decoded = decode_frame(frame);
        std::lock_guard lock(mutex_);
        if (replay) set_.ended_at_us = frame.capture_timestamp_us;
        if (auto* arp = std::get_if<ArpSummary>(&decoded)) {
            if (admit(*arp, config_)) observe(set_, *arp);
        } else if (auto* ip = std::get_if<IpSummary>(&decoded)) {
            if (admit(*ip, config_)) observe(set_, *ip);
        }
        if (set_.detected_host_count() >= config_.host_threshold) {
            set_.termination_reason = TerminationReason::ThresholdReached;
            if (!replay) set_.ended_at_us = wall_clock_us();
            return set_;
        }
    }
}

std::unique_ptr<FrameSource> open_capture_source(const CaptureConfig& config) {
    if (const auto* trace = std::get_if<TraceFile>(&config.source))
        return std::make_unique<TraceFileSource>(trace->path);
    const auto& live = std::get<LiveInterface>(config.source);
    return std::make_unique<LiveInterfaceSource>(live.name, config.promiscuous);
}

ObservationSet run_passive_phase(const CaptureConfig& config, FrameSource& source) {
    PassiveScanSession session(config);
    return session.run(source);
}

ObservationSet run_passive_phase(const CaptureConfig& config) {
    auto source = open_capture_source(config);
    return run_passive_phase(config, *source);
}

}  // namespace netscope
