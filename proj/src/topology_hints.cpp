#include "netscope/topology_hints.hpp"

#include <fstream>

#include "json.hpp"
#include "netscope/errors.hpp"

namespace netscope {

const char* os_family_name(OsFamilyHint hint) {
    switch (hint) {
        case OsFamilyHint::UnixLike: return "unix-like";
        case OsFamilyHint::Windows: return "windows";
        case OsFamilyHint::NetworkDevice: return "network-device";
        case OsFamilyHint::Unknown: return "unknown";
    }
    return "?";
}

TtlHint ttl_hint(int observed_ttl) {
    TtlHint hint;
    hint.observed_ttl = observed_ttl;
    if (observed_ttl <= 0 || observed_ttl > 255) return hint;

    int initial;
    if (observed_ttl <= 64) {
        initial = 64;
        hint.os_family_hint = OsFamilyHint::UnixLike;
    } else if (observed_ttl <= 128) {
        initial = 128;
        hint.os_family_hint = OsFamilyHint::Windows;
    } else {
        initial = 255;
        hint.os_family_hint = OsFamilyHint::NetworkDevice;
    }
    hint.inferred_initial_ttl = initial;
    hint.inferred_distance_hops = initial - observed_ttl;
    return hint;
}

HopcountTable hopcount_table_from_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw InvalidSpecError("hopcount table must be a JSON object of address -> hopcount");
    HopcountTable table;
    for (const auto& [key, value] : doc.items()) {
        auto ip = Ipv4Address::parse(key);
        if (!ip) throw InvalidSpecError("hopcount table: bad address '" + key + "'");
        if (!value.is_number_integer() || value.get<int>() < 1)
            throw InvalidSpecError("hopcount table: hopcount for '" + key +
                                   "' must be an integer >= 1");
        table.entries[*ip] = value.get<int>();
    }
    return table;
}

HopcountTable load_hopcount_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in.is_open())
        throw SourceOpenError("cannot open hopcount table '" + path.string() + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return hopcount_table_from_json(text);
}

std::optional<Ipv4Address> infer_internal_gateway(const HopcountTable& table) {
    if (table.entries.empty()) return std::nullopt;

    // modal hopcount; equal frequencies resolve to the smaller hopcount,
    // which keeps the choice invariant under shifting all entries
    std::map<int, int> frequency;
    for (const auto& [ip, hops] : table.entries) ++frequency[hops];
    int modal = 0, modal_count = 0;
    for (const auto& [hops, count] : frequency) {
        if (count > modal_count) {
            modal = hops;
            modal_count = count;
        }
    }

    std::optional<Ipv4Address> candidate;
    for (const auto& [ip, hops] : table.entries) {
        if (hops != modal - 1) continue;
        if (candidate) return std::nullopt;  // several candidates: no claim
        candidate = ip;
    }
    return candidate;
}

}  // namespace netscope
