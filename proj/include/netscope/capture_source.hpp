#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "netscope/pcap_file.hpp"

namespace netscope {

// A stream of captured frames. Trace files only ever report Frame or End;
// a live interface alternates Frame and Idle and never ends on its own.
enum class PollStatus { Frame, Idle, End };

class FrameSource {
public:
    virtual ~FrameSource() = default;

    // Waits at most `budget` for the next frame.
    virtual PollStatus poll(RawFrame& out, std::chrono::milliseconds budget) = 0;

    // True when frame timestamps drive the duration timeout (replay);
    // false when wall-clock time does (live capture).
    virtual bool timestamps_are_authoritative() const = 0;
};

class TraceFileSource : public FrameSource {
public:
    explicit TraceFileSource(const std::filesystem::path& path);
    explicit TraceFileSource(std::unique_ptr<std::istream> stream, std::string name = "<stream>");

    PollStatus poll(RawFrame& out, std::chrono::milliseconds budget) override;
    bool timestamps_are_authoritative() const override { return true; }

private:
    PcapReader reader_;
};

// AF_PACKET capture on Linux. Construction opens the socket and, when asked,
// puts the interface into promiscuous mode; both require CAP_NET_RAW.
class LiveInterfaceSource : public FrameSource {
public:
    LiveInterfaceSource(const std::string& interface_name, bool promiscuous);
    ~LiveInterfaceSource() override;

    LiveInterfaceSource(const LiveInterfaceSource&) = delete;
    LiveInterfaceSource& operator=(const LiveInterfaceSource&) = delete;

    PollStatus poll(RawFrame& out, std::chrono::milliseconds budget) override;
    bool timestamps_are_authoritative() const override { return false; }

private:
    int fd_ = -1;
    int ifindex_ = 0;
};

}  // namespace netscope
