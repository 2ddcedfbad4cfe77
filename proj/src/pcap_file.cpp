#include "netscope/pcap_file.hpp"

#include <array>
#include <cstring>

#include "netscope/errors.hpp"

namespace netscope {

namespace {

constexpr uint32_t kMagicUsec = 0xA1B2C3D4;
constexpr uint32_t kMagicNsec = 0xA1B23C4D;
constexpr uint32_t kMagicUsecSwapped = 0xD4C3B2A1;
constexpr uint32_t kMagicNsecSwapped = 0x4D3CB2A1;
constexpr uint32_t kLinkTypeEthernet = 1;
// caplen ceiling; anything larger means a corrupt record header
constexpr uint32_t kMaxCaptureLength = 256 * 1024;

uint32_t swap32(uint32_t v) {
    return (v >> 24) | ((v >> 8) & 0xFF00u) | ((v << 8) & 0xFF0000u) | (v << 24);
}

void put_u32le(std::ostream& out, uint32_t v) {
    std::array<char, 4> b{char(v), char(v >> 8), char(v >> 16), char(v >> 24)};
    out.write(b.data(), 4);
}

void put_u16le(std::ostream& out, uint16_t v) {
    std::array<char, 2> b{char(v), char(v >> 8)};
    out.write(b.data(), 2);
}

}  // namespace

PcapReader::PcapReader(const std::filesystem::path& path) : name_(path.string()) {
    auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!file->is_open())
        throw SourceOpenError("cannot open trace file '" + name_ + "'");
    owned_ = std::move(file);
    in_ = owned_.get();
    read_global_header();
}

PcapReader::PcapReader(std::unique_ptr<std::istream> stream, std::string name)
    : owned_(std::move(stream)), in_(owned_.get()), name_(std::move(name)) {
    read_global_header();
}

void PcapReader::read_global_header() {
    std::array<uint8_t, 24> hdr;
    in_->read(reinterpret_cast<char*>(hdr.data()), hdr.size());
    if (in_->gcount() != std::streamsize(hdr.size()))
        throw MalformedTraceError("'" + name_ + "': file shorter than a pcap global header");

    uint32_t magic;
    std::memcpy(&magic, hdr.data(), 4);
    switch (magic) {
        case kMagicUsec: break;
        case kMagicNsec: nanosecond_ = true; break;
        case kMagicUsecSwapped: swapped_ = true; break;
        case kMagicNsecSwapped: swapped_ = true; nanosecond_ = true; break;
        default:
            throw MalformedTraceError("'" + name_ + "': unrecognized pcap magic");
    }

    uint32_t link_type;
    std::memcpy(&link_type, hdr.data() + 20, 4);
    if (swapped_) link_type = swap32(link_type);
    if (link_type != kLinkTypeEthernet)
        throw MalformedTraceError("'" + name_ + "': unsupported link type " +
                                  std::to_string(link_type) + " (need Ethernet)");
}

std::optional<RawFrame> PcapReader::next() {
    std::array<uint8_t, 16> rec;
    in_->read(reinterpret_cast<char*>(rec.data()), rec.size());
    auto got = in_->gcount();
    if (got == 0) return std::nullopt;
    if (got != std::streamsize(rec.size()))
        throw MalformedTraceError("'" + name_ + "': truncated packet record header");

    uint32_t fields[4];
    std::memcpy(fields, rec.data(), sizeof(fields));
    if (swapped_)
        for (auto& f : fields) f = swap32(f);
    const uint32_t ts_sec = fields[0];
    const uint32_t ts_frac = fields[1];
    const uint32_t incl_len = fields[2];
    const uint32_t orig_len = fields[3];

    if (incl_len > kMaxCaptureLength)
        throw MalformedTraceError("'" + name_ + "': implausible capture length " +
                                  std::to_string(incl_len));

    RawFrame frame;
    frame.bytes.resize(incl_len);
    in_->read(reinterpret_cast<char*>(frame.bytes.data()), incl_len);
    if (in_->gcount() != std::streamsize(incl_len))
        throw MalformedTraceError("'" + name_ + "': truncated packet data");

    int64_t frac_us = nanosecond_ ? int64_t(ts_frac) / 1000 : int64_t(ts_frac);
    frame.capture_timestamp_us = int64_t(ts_sec) * 1'000'000 + frac_us;
    // some writers record orig < incl; never report less than what we hold
    frame.original_length = std::max(orig_len, incl_len);
    return frame;
}

PcapWriter::PcapWriter(std::ostream& out) : out_(&out) {
    put_u32le(*out_, kMagicUsec);
    put_u16le(*out_, 2);   // version major
    put_u16le(*out_, 4);   // version minor
    put_u32le(*out_, 0);   // thiszone
    put_u32le(*out_, 0);   // sigfigs
    put_u32le(*out_, 65535);
    put_u32le(*out_, kLinkTypeEthernet);
}

void PcapWriter::write(const RawFrame& frame) {
    put_u32le(*out_, uint32_t(frame.capture_timestamp_us / 1'000'000));
    put_u32le(*out_, uint32_t(frame.capture_timestamp_us % 1'000'000));
    put_u32le(*out_, uint32_t(frame.bytes.size()));
    put_u32le(*out_, std::max<uint32_t>(frame.original_length, uint32_t(frame.bytes.size())));
    out_->write(reinterpret_cast<const char*>(frame.bytes.data()),
                std::streamsize(frame.bytes.size()));
}

}  // namespace netscope
