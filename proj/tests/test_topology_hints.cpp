#include "doctest.h"
#include "netscope/errors.hpp"
#include "netscope/topology_hints.hpp"

#include <random>

using namespace netscope;

namespace {

Ipv4Address ip(const char* s) { return *Ipv4Address::parse(s); }

HopcountTable table_of(std::initializer_list<std::pair<const char*, int>> entries) {
    HopcountTable table;
    for (const auto& [addr, hops] : entries) table.entries[ip(addr)] = hops;
    return table;
}

}  // namespace

TEST_CASE("ttl hints against the standard initial values") {
    auto h64 = ttl_hint(64);
    CHECK(h64.inferred_initial_ttl == 64);
    CHECK(h64.inferred_distance_hops == 0);
    CHECK(h64.os_family_hint == OsFamilyHint::UnixLike);

    auto h126 = ttl_hint(126);
    CHECK(h126.inferred_initial_ttl == 128);
    CHECK(h126.inferred_distance_hops == 2);
    CHECK(h126.os_family_hint == OsFamilyHint::Windows);

    auto h200 = ttl_hint(200);
    CHECK(h200.inferred_initial_ttl == 255);
    CHECK(h200.inferred_distance_hops == 55);
    CHECK(h200.os_family_hint == OsFamilyHint::NetworkDevice);

    CHECK(ttl_hint(0).os_family_hint == OsFamilyHint::Unknown);
    CHECK_FALSE(ttl_hint(0).inferred_initial_ttl.has_value());
    CHECK(ttl_hint(256).os_family_hint == OsFamilyHint::Unknown);
    CHECK(ttl_hint(-3).os_family_hint == OsFamilyHint::Unknown);
    CHECK(ttl_hint(255).os_family_hint == OsFamilyHint::NetworkDevice);
    CHECK(ttl_hint(1).inferred_initial_ttl == 64);

    // monotone: a larger observed TTL never lowers the inferred initial
    int previous = 64;
    for (int ttl = 1; ttl <= 255; ++ttl) {
        auto hint = ttl_hint(ttl);
        REQUIRE(hint.inferred_initial_ttl.has_value());
        CHECK(*hint.inferred_initial_ttl >= previous);
        CHECK(*hint.inferred_initial_ttl >= ttl);
        CHECK(*hint.inferred_distance_hops == *hint.inferred_initial_ttl - ttl);
        previous = *hint.inferred_initial_ttl;
    }
}

TEST_CASE("internal gateway: unique hop-minus-one candidate") {
    auto table = table_of({{"10.0.0.5", 3}, {"10.0.0.9", 3}, {"10.0.0.12", 3}, {"10.0.0.1", 2}});
    CHECK(infer_internal_gateway(table) == ip("10.0.0.1"));

    CHECK_FALSE(infer_internal_gateway(table_of({{"10.0.0.5", 3}, {"10.0.0.9", 3}})).has_value());

    auto ambiguous = table_of({{"10.0.0.1", 2},
                               {"10.0.0.2", 2},
                               {"10.0.0.5", 3},
                               {"10.0.0.9", 3},
                               {"10.0.0.12", 3}});
    CHECK_FALSE(infer_internal_gateway(ambiguous).has_value());

    CHECK_FALSE(infer_internal_gateway(HopcountTable{}).has_value());
}

TEST_CASE("internal gateway inference properties") {
    std::mt19937_64 rng(606);
    for (int round = 0; round < 300; ++round) {
        HopcountTable table;
        int mode_hops = 2 + int(rng() % 8);
        std::size_t crowd = 3 + rng() % 20;
        uint32_t base = 0x0A000000u + uint32_t(rng() % 1000) * 256;
        for (std::size_t i = 0; i < crowd; ++i)
            table.entries[Ipv4Address(base + 2 + uint32_t(i))] = mode_hops;
        bool planted = rng() % 2 == 0;
        Ipv4Address router(base + 1);
        if (planted) table.entries[router] = mode_hops - 1;
        // a little off-mode noise that avoids the h-1 level
        if (rng() % 2) table.entries[Ipv4Address(base + 200)] = mode_hops + 1;

        auto result = infer_internal_gateway(table);
        if (planted) {
            REQUIRE(result.has_value());
            CHECK(*result == router);
            CHECK(table.entries.count(*result) == 1);  // never synthesized
        } else {
            CHECK_FALSE(result.has_value());
        }

        // shifting all hopcounts by a constant leaves the pick unchanged
        HopcountTable shifted;
        int k = int(rng() % 5);
        for (const auto& [addr, hops] : table.entries) shifted.entries[addr] = hops + k;
        CHECK(infer_internal_gateway(shifted) == result);
    }
}

TEST_CASE("hopcount table ingestion") {
    auto table = hopcount_table_from_json(R"({"10.0.0.1": 2, "10.0.0.5": 3})");
    CHECK(table.entries.size() == 2);
    CHECK(table.entries.at(ip("10.0.0.1")) == 2);

    CHECK_THROWS_AS(hopcount_table_from_json("not json"), InvalidSpecError);
    CHECK_THROWS_AS(hopcount_table_from_json("[1,2]"), InvalidSpecError);
    CHECK_THROWS_AS(hopcount_table_from_json(R"({"bad-address": 2})"), InvalidSpecError);
    CHECK_THROWS_AS(hopcount_table_from_json(R"({"10.0.0.1": 0})"), InvalidSpecError);
    CHECK_THROWS_AS(hopcount_table_from_json(R"({"10.0.0.1": "two"})"), InvalidSpecError);
    CHECK_THROWS_AS(load_hopcount_table("/nonexistent/hops.json"), SourceOpenError);
}
