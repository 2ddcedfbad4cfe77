#include "netscope/capture_source.hpp"

#include <cstring>

#include "netscope/errors.hpp"

#ifdef __linux__
#include <net/if.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/ioctl.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <linux/if_packet.h>
#include <linux/sockios.h>
#endif

namespace netscope {

TraceFileSource::TraceFileSource(const std::filesystem::path& path) : reader_(path) {}

TraceFileSource::TraceFileSource(std::unique_ptr<std::istream> stream, std::string name)
    : reader_(std::move(stream), std::move(name)) {}

PollStatus TraceFileSource::poll(RawFrame& out, std::chrono::milliseconds) {
    auto frame = reader_.next();
    if (!frame) return PollStatus::End;
    out = std::move(*frame);
    return PollStatus::Frame;
}

#ifdef __linux__

LiveInterfaceSource::LiveInterfaceSource(const std::string& interface_name, bool promiscuous) {
    fd_ = ::socket(AF_PACKET, SOCK_RAW, htons(0x0003 /* ETH_P_ALL */));
    if (fd_ < 0)
        throw SourceOpenError("cannot open packet socket: " + std::string(strerror(errno)) +
                              " (capture requires CAP_NET_RAW)");

    ifindex_ = int(if_nametoindex(interface_name.c_str()));
    if (ifindex_ == 0) {
        ::close(fd_);
        fd_ = -1;
        throw SourceOpenError("no such interface '" + interface_name + "'");
    }

    sockaddr_ll addr{};
    addr.sll_family = AF_PACKET;
    addr.sll_protocol = htons(0x0003);
    addr.sll_ifindex = ifindex_;
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
        std::string msg = strerror(errno);
        ::close(fd_);
        fd_ = -1;
        throw SourceOpenError("cannot bind to interface '" + interface_name + "': " + msg);
    }

    if (promiscuous) {
        packet_mreq mreq{};
        mreq.mr_ifindex = ifindex_;
        mreq.mr_type = PACKET_MR_PROMISC;
        if (::setsockopt(fd_, SOL_PACKET, PACKET_ADD_MEMBERSHIP, &mreq, sizeof(mreq)) < 0) {
            std::string msg = strerror(errno);
            ::close(fd_);
            fd_ = -1;
            throw SourceOpenError("cannot enable promiscuous mode on '" + interface_name +
                                  "': " + msg);
        }
    }
}

LiveInterfaceSource::~LiveInterfaceSource() {
    if (fd_ >= 0) ::close(fd_);
}

PollStatus LiveInterfaceSource::poll(RawFrame& out, std::chrono::milliseconds budget) {
    pollfd pfd{fd_, POLLIN, 0};
    int rc = ::poll(&pfd, 1, int(budget.count()));
    if (rc <= 0) return PollStatus::Idle;

    std::vector<uint8_t> buf(65536);
    ssize_t n = ::recvfrom(fd_, buf.data(), buf.size(), 0, nullptr, nullptr);
    if (n <= 0) return PollStatus::Idle;

    timeval tv{};
    if (::ioctl(fd_, SIOCGSTAMP, &tv) < 0) ::gettimeofday(&tv, nullptr);

    buf.resize(size_t(n));
    out.bytes = std::move(buf);
    out.original_length = uint32_t(n);
    out.capture_timestamp_us = int64_t(tv.tv_sec) * 1'000'000 + tv.tv_usec;
    return PollStatus::Frame;
}

#else

LiveInterfaceSource::LiveInterfaceSource(const std::string& interface_name, bool) {
    throw SourceOpenError("live capture not supported on this platform (interface '" +
                          interface_name + "')");
}

LiveInterfaceSource::~LiveInterfaceSource() = default;

PollStatus LiveInterfaceSource::poll(RawFrame&, std::chrono::milliseconds) {
    return PollStatus::End;
}

#endif

}  // namespace netscope
