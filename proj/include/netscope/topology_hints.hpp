#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "netscope/ipv4.hpp"

namespace netscope {

enum class OsFamilyHint { UnixLike, Windows, NetworkDevice, Unknown };

const char* os_family_name(OsFamilyHint hint);

// Reading of one observed TTL against the common OS defaults 64/128/255.
// Degenerate inputs (0 or > 255) carry no inference at all.
struct TtlHint {
    int observed_ttl = 0;
    std::optional<int> inferred_initial_ttl;   // smallest default >= observed
    std::optional<int> inferred_distance_hops; // initial - observed
    OsFamilyHint os_family_hint = OsFamilyHint::Unknown;

    bool operator==(const TtlHint&) const = default;
};

TtlHint ttl_hint(int observed_ttl);

// Hopcounts to a set of target addresses, measured from one external vantage
// point (exported from a traceroute-capable tool).
struct HopcountTable {
    std::map<Ipv4Address, int> entries;  // hopcount >= 1
};

// JSON document mapping dotted-quad strings to integers.
HopcountTable load_hopcount_table(const std::filesystem::path& path);
HopcountTable hopcount_table_from_json(const std::string& text);

// A router's internal interface answers with one hop less than the hosts
// behind it. Returns the unique address sitting at (modal hopcount - 1);
// nullopt when there is none or the candidate is ambiguous.
std::optional<Ipv4Address> infer_internal_gateway(const HopcountTable& table);

}  // namespace netscope
