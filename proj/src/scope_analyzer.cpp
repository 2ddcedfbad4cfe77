#include "netscope/scope_analyzer.hpp"

#include <algorithm>
#include <array>
#include <cassert>

namespace netscope {

namespace {

struct SegmentBound {
    uint32_t low;
    uint32_t high;
    AddressClass cls;
};

// The special-purpose blocks split the 32-bit space into nine fixed segments.
constexpr std::array<SegmentBound, 9> kSegments{{
    {0x00000000u, 0x09FFFFFFu, AddressClass::Global},
    {0x0A000000u, 0x0AFFFFFFu, AddressClass::Private},    // 10.0.0.0/8
    {0x0B000000u, 0xA9FDFFFFu, AddressClass::Global},
    {0xA9FE0000u, 0xA9FEFFFFu, AddressClass::LinkLocal},  // 169.254.0.0/16
    {0xA9FF0000u, 0xAC0FFFFFu, AddressClass::Global},
    {0xAC100000u, 0xAC1FFFFFu, AddressClass::Private},    // 172.16.0.0/12
    {0xAC200000u, 0xC0A7FFFFu, AddressClass::Global},
    {0xC0A80000u, 0xC0A8FFFFu, AddressClass::Private},    // 192.168.0.0/16
    {0xC0A90000u, 0xFFFFFFFFu, AddressClass::Global},
}};

NetworkRange make_range(std::vector<Ipv4Address> hosts) {
    NetworkRange range;
    range.start = hosts.front();
    range.end = hosts.back();
    range.cls = classify_address(range.start);
    range.detected_hosts = std::move(hosts);
    return range;
}

int class_rank(AddressClass cls) {
    switch (cls) {
        case AddressClass::Global: return 0;
        case AddressClass::Private: return 1;
        case AddressClass::LinkLocal: return 2;
    }
    return 3;
}

}  // namespace

const char* address_class_name(AddressClass cls) {
    switch (cls) {
        case AddressClass::Global: return "Global";
        case AddressClass::Private: return "Private";
        case AddressClass::LinkLocal: return "LinkLocal";
    }
    return "?";
}

AddressClass classify_address(Ipv4Address ip) {
    return class_segment_of(ip).cls;
}

ClassSegment class_segment_of(Ipv4Address ip) {
    for (const auto& seg : kSegments)
        if (ip.value() >= seg.low && ip.value() <= seg.high)
            return {Ipv4Address(seg.low), Ipv4Address(seg.high), seg.cls};
    assert(false && "segment table covers the full space");
    return {};
}

std::vector<NetworkRange> cluster(std::vector<Ipv4Address> addresses,
                                  const ClusteringPolicy& policy) {
    if (addresses.empty()) throw EmptyInputError();
    std::sort(addresses.begin(), addresses.end());
    addresses.erase(std::unique(addresses.begin(), addresses.end()), addresses.end());

    // true when `next` may join a cluster whose lowest address is `first`
    auto joins = [&policy](Ipv4Address first, Ipv4Address next) {
        if (!same_class_segment(first, next)) return false;
        if (const auto* max_size = std::get_if<MaxNetworkSize>(&policy)) {
            assert(max_size->max_size >= 2);
            return uint64_t(next.value()) - first.value() + 1 <= max_size->max_size;
        }
        if (const auto* prefix = std::get_if<PresumedPrefix>(&policy)) {
            assert(prefix->prefix_length <= 32);
            uint32_t mask = prefix_to_mask(prefix->prefix_length);
            return (first.value() & mask) == (next.value() & mask);
        }
        return true;  // SingleNetwork: segment purity is the only cut
    };

    std::vector<NetworkRange> ranges;
    std::vector<Ipv4Address> current;
    for (Ipv4Address addr : addresses) {
        if (!current.empty() && !joins(current.front(), addr)) {
            ranges.push_back(make_range(std::move(current)));
            current.clear();
        }
        current.push_back(addr);
    }
    ranges.push_back(make_range(std::move(current)));
    return ranges;
}

std::vector<NetworkRange> order_ranges(std::vector<NetworkRange> ranges) {
    std::stable_sort(ranges.begin(), ranges.end(),
                     [](const NetworkRange& a, const NetworkRange& b) {
                         if (class_rank(a.cls) != class_rank(b.cls))
                             return class_rank(a.cls) < class_rank(b.cls);
                         if (a.host_count() != b.host_count())
                             return a.host_count() > b.host_count();
                         return a.start < b.start;
                     });
    return ranges;
}

}  // namespace netscope
