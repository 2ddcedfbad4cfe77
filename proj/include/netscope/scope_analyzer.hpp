#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "netscope/ipv4.hpp"

namespace netscope {

enum class AddressClass { Global, Private, LinkLocal };

const char* address_class_name(AddressClass cls);

// Private per RFC 1918 (10/8, 172.16/12, 192.168/16), LinkLocal per
// RFC 3927 (169.254/16), Global otherwise.
AddressClass classify_address(Ipv4Address ip);

// Maximal contiguous interval of one AddressClass containing `ip`. Ranges
// never span two of these segments, even between two same-class addresses
// whose gap contains a different class (e.g. Global hosts on both sides
// of 10/8).
struct ClassSegment {
    Ipv4Address low;
    Ipv4Address high;
    AddressClass cls;

    bool operator==(const ClassSegment&) const = default;
};

ClassSegment class_segment_of(Ipv4Address ip);

inline bool same_class_segment(Ipv4Address a, Ipv4Address b) {
    return class_segment_of(a).low == class_segment_of(b).low;
}

// Preliminary range: the observed min-max span of one cluster plus the
// detected hosts that produced it.
struct NetworkRange {
    Ipv4Address start;
    Ipv4Address end;
    std::vector<Ipv4Address> detected_hosts;  // sorted ascending
    AddressClass cls = AddressClass::Global;

    std::size_t host_count() const { return detected_hosts.size(); }
    bool contains(Ipv4Address ip) const { return start <= ip && ip <= end; }
    uint64_t span() const { return uint64_t(end.value()) - start.value() + 1; }

    bool operator==(const NetworkRange&) const = default;
};

struct MaxNetworkSize {
    uint64_t max_size = 256;  // >= 2
};
struct PresumedPrefix {
    unsigned prefix_length = 24;  // <= 32
};
struct SingleNetwork {};

using ClusteringPolicy = std::variant<MaxNetworkSize, PresumedPrefix, SingleNetwork>;

struct EmptyInputError : std::invalid_argument {
    EmptyInputError() : std::invalid_argument("no addresses to cluster") {}
};

// Sorts and deduplicates the addresses, then partitions them into preliminary
// ranges according to the policy. Output is disjoint, ordered by start
// address, and covers exactly the input.
std::vector<NetworkRange> cluster(std::vector<Ipv4Address> addresses,
                                  const ClusteringPolicy& policy);

// Orders ranges for own-network selection: class (Global, Private, LinkLocal),
// then detected-host count descending, then start address ascending.
std::vector<NetworkRange> order_ranges(std::vector<NetworkRange> ranges);

}  // namespace netscope
