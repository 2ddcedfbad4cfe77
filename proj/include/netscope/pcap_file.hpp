#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>

#include "netscope/packet_codec.hpp"

namespace netscope {

// Reader for classic pcap savefiles (not pcapng). Accepts the microsecond and
// nanosecond magics in either byte order; nanosecond timestamps are truncated
// to microseconds. Only link type 1 (Ethernet) is accepted.
class PcapReader {
public:
    explicit PcapReader(const std::filesystem::path& path);  // throws SourceOpenError
    explicit PcapReader(std::unique_ptr<std::istream> stream, std::string name = "<stream>");

    // nullopt at clean end of file; throws MalformedTraceError on a truncated
    // or implausible record.
    std::optional<RawFrame> next();

private:
    void read_global_header();
    std::unique_ptr<std::istream> owned_;
    std::istream* in_ = nullptr;
    std::string name_;
    bool swapped_ = false;
    bool nanosecond_ = false;
};

// Writer producing little-endian microsecond-magic files, link type Ethernet.
class PcapWriter {
public:
    explicit PcapWriter(std::ostream& out);
    void write(const RawFrame& frame);

private:
    std::ostream* out_;
};

}  // namespace netscope
