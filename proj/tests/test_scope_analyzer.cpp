#include "doctest.h"
#include "netscope/scope_analyzer.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace netscope;

namespace {

Ipv4Address ip(const char* s) { return *Ipv4Address::parse(s); }

NetworkRange range_of(const char* start, const char* end, std::size_t hosts,
                      AddressClass cls) {
    NetworkRange r;
    r.start = ip(start);
    r.end = ip(end);
    r.cls = cls;
    r.detected_hosts.resize(hosts, r.start);  // count is what ordering uses
    return r;
}

// biased generator that lands on and around the special-space boundaries
std::vector<Ipv4Address> random_addresses(std::mt19937_64& rng, std::size_t max_size = 64) {
    static const uint32_t kAnchors[] = {
        0x0A000000u, 0x0AFFFFFFu, 0xAC100000u, 0xAC1FFFFFu,
        0xC0A80000u, 0xC0A8FFFFu, 0xA9FE0000u, 0xA9FEFFFFu,
    };
    std::size_t n = 1 + rng() % max_size;
    std::vector<Ipv4Address> out;
    for (std::size_t i = 0; i < n; ++i) {
        uint32_t v;
        switch (rng() % 3) {
            case 0:
                v = uint32_t(rng());
                break;
            case 1:
                v = kAnchors[rng() % std::size(kAnchors)] + uint32_t(rng() % 1024) - 512;
                break;
            default:
                v = 0x0A000000u + uint32_t(rng() % 4096);
                break;
        }
        out.emplace_back(v);
    }
    return out;
}

void check_clustering_properties(const std::vector<Ipv4Address>& input,
                                 const ClusteringPolicy& policy) {
    auto ranges = cluster(input, policy);

    // partition: concatenation of detected hosts equals the sorted unique input
    std::vector<Ipv4Address> expected(input);
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    std::vector<Ipv4Address> got;
    for (const auto& range : ranges)
        got.insert(got.end(), range.detected_hosts.begin(), range.detected_hosts.end());
    CHECK(got == expected);

    Ipv4Address previous_end;
    bool first = true;
    for (const auto& range : ranges) {
        CHECK(range.start == range.detected_hosts.front());
        CHECK(range.end == range.detected_hosts.back());
        CHECK(oracle::interval_class_pure(range.start, range.end));
        CHECK(int(oracle::classify(range.start)) == int(range.cls));
        if (!first) CHECK(previous_end < range.start);  // disjoint, ordered
        previous_end = range.end;
        first = false;

        if (const auto* m = std::get_if<MaxNetworkSize>(&policy)) CHECK(range.span() <= m->max_size);
        if (const auto* p = std::get_if<PresumedPrefix>(&policy)) {
            uint32_t mask = prefix_to_mask(p->prefix_length);
            for (Ipv4Address host : range.detected_hosts)
                CHECK((host.value() & mask) == (range.start.value() & mask));
        }

        // idempotence: re-clustering one range returns exactly that range
        auto again = cluster(range.detected_hosts, policy);
        REQUIRE(again.size() == 1);
        CHECK(again.front() == range);
    }
}

}  // namespace

TEST_CASE("address classification at the special-space boundaries") {
    CHECK(classify_address(ip("10.1.2.3")) == AddressClass::Private);
    CHECK(classify_address(ip("169.254.0.5")) == AddressClass::LinkLocal);
    CHECK(classify_address(ip("8.8.8.8")) == AddressClass::Global);

    CHECK(classify_address(ip("9.255.255.255")) == AddressClass::Global);
    CHECK(classify_address(ip("10.0.0.0")) == AddressClass::Private);
    CHECK(classify_address(ip("10.255.255.255")) == AddressClass::Private);
    CHECK(classify_address(ip("11.0.0.0")) == AddressClass::Global);
    CHECK(classify_address(ip("172.15.255.255")) == AddressClass::Global);
    CHECK(classify_address(ip("172.16.0.0")) == AddressClass::Private);
    CHECK(classify_address(ip("172.31.255.255")) == AddressClass::Private);
    CHECK(classify_address(ip("172.32.0.0")) == AddressClass::Global);
    CHECK(classify_address(ip("192.167.255.255")) == AddressClass::Global);
    CHECK(classify_address(ip("192.168.255.255")) == AddressClass::Private);
    CHECK(classify_address(ip("192.169.0.0")) == AddressClass::Global);
    CHECK(classify_address(ip("169.253.255.255")) == AddressClass::Global);
    CHECK(classify_address(ip("169.255.0.0")) == AddressClass::Global);

    // exhaustive agreement with the independent formulation
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100000; ++i) {
        Ipv4Address a{uint32_t(rng())};
        CHECK(int(classify_address(a)) == int(oracle::classify(a)));
    }
}

TEST_CASE("worked example: span of 272 splits under max size 256") {
    auto ranges = cluster({ip("192.168.0.2"), ip("192.168.1.17")}, MaxNetworkSize{256});
    REQUIRE(ranges.size() == 2);
    CHECK(ranges[0].start == ip("192.168.0.2"));
    CHECK(ranges[0].end == ip("192.168.0.2"));
    CHECK(ranges[1].start == ip("192.168.1.17"));
    CHECK(ranges[1].end == ip("192.168.1.17"));

    auto single = cluster({ip("192.168.0.2"), ip("192.168.1.17")}, SingleNetwork{});
    REQUIRE(single.size() == 1);
    CHECK(single[0].start == ip("192.168.0.2"));
    CHECK(single[0].end == ip("192.168.1.17"));
    CHECK(single[0].span() == 272);
}

TEST_CASE("three non-adjacent /24 pools yield exactly their min-max ranges") {
    std::mt19937_64 rng(404);
    struct Pool {
        const char* base;
        std::size_t count;
    };
    const Pool pools[] = {{"10.0.1.0", 14}, {"10.0.5.0", 13}, {"192.168.3.0", 13}};
    std::vector<Ipv4Address> addresses;
    for (const auto& pool : pools) {
        uint32_t net = ip(pool.base).value();
        std::set<uint32_t> picked;
        while (picked.size() < pool.count) picked.insert(net + 1 + rng() % 254);
        for (uint32_t v : picked) addresses.emplace_back(v);
    }
    REQUIRE(addresses.size() == 40);
    std::shuffle(addresses.begin(), addresses.end(), rng);

    auto ranges = cluster(addresses, MaxNetworkSize{256});
    REQUIRE(ranges.size() == 3);

    std::vector<Ipv4Address> sorted(addresses);
    std::sort(sorted.begin(), sorted.end());
    // the brute-force enumeration finds exactly one minimal partition and it
    // is the greedy one
    auto minimal = oracle::minimal_partitions(sorted, 256);
    REQUIRE(minimal.size() == 1);
    std::size_t host_index = 0;
    for (std::size_t seg = 0; seg < ranges.size(); ++seg) {
        CHECK(ranges[seg].start == sorted[host_index]);
        host_index = minimal[0][seg];
        CHECK(ranges[seg].end == sorted[host_index - 1]);
    }
}

TEST_CASE("single-network policy still splits at class boundaries") {
    auto ranges = cluster({ip("9.255.255.250"), ip("10.0.0.5"), ip("11.0.0.3")}, SingleNetwork{});
    REQUIRE(ranges.size() == 3);
    CHECK(ranges[0].cls == AddressClass::Global);
    CHECK(ranges[1].cls == AddressClass::Private);
    CHECK(ranges[2].cls == AddressClass::Global);

    // same class on both sides of a foreign block still cannot merge
    auto straddle = cluster({ip("9.9.9.9"), ip("11.1.1.1")}, SingleNetwork{});
    CHECK(straddle.size() == 2);
}

TEST_CASE("presumed-prefix clustering") {
    auto one = cluster({ip("10.1.2.3"), ip("10.1.2.200")}, PresumedPrefix{24});
    CHECK(one.size() == 1);
    auto two = cluster({ip("10.1.2.3"), ip("10.1.2.200")}, PresumedPrefix{25});
    CHECK(two.size() == 2);

    // top-4-bits group 160..175 contains the link-local space: split in three
    auto split = cluster({ip("160.0.0.1"), ip("169.254.0.1"), ip("175.0.0.9")},
                         PresumedPrefix{4});
    REQUIRE(split.size() == 3);
    CHECK(split[1].cls == AddressClass::LinkLocal);

    // prefix 0: one cluster per class segment
    auto zero = cluster({ip("10.1.2.3"), ip("10.200.0.1")}, PresumedPrefix{0});
    CHECK(zero.size() == 1);
}

TEST_CASE("clustering rejects empty input") {
    CHECK_THROWS_AS(cluster({}, SingleNetwork{}), EmptyInputError);
}

TEST_CASE("duplicate addresses collapse") {
    auto ranges = cluster({ip("10.0.0.5"), ip("10.0.0.5"), ip("10.0.0.7")}, MaxNetworkSize{256});
    REQUIRE(ranges.size() == 1);
    CHECK(ranges[0].detected_hosts.size() == 2);
}

TEST_CASE("clustering properties hold over random inputs") {
    std::mt19937_64 rng(31337);
    for (int round = 0; round < 300; ++round) {
        auto input = random_addresses(rng);
        uint64_t max_size = 2 + rng() % 1024;
        check_clustering_properties(input, MaxNetworkSize{max_size});
        check_clustering_properties(input, PresumedPrefix{unsigned(rng() % 33)});
        check_clustering_properties(input, SingleNetwork{});

        // greedy result is a coarsest valid partition
        std::vector<Ipv4Address> sorted(input);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        auto greedy = cluster(input, MaxNetworkSize{max_size});
        CHECK(greedy.size() == oracle::min_segments(sorted, max_size));
    }
}

TEST_CASE("range ordering criteria") {
    auto g = range_of("8.8.8.0", "8.8.8.9", 2, AddressClass::Global);
    auto p = range_of("10.0.0.0", "10.0.0.9", 5, AddressClass::Private);
    auto l = range_of("169.254.0.0", "169.254.0.9", 10, AddressClass::LinkLocal);
    auto ordered = order_ranges({p, g, l});
    REQUIRE(ordered.size() == 3);
    CHECK(ordered[0].cls == AddressClass::Global);
    CHECK(ordered[1].cls == AddressClass::Private);
    CHECK(ordered[2].cls == AddressClass::LinkLocal);

    auto p7 = range_of("10.1.0.0", "10.1.0.9", 7, AddressClass::Private);
    auto p3 = range_of("10.0.0.0", "10.0.0.9", 3, AddressClass::Private);
    auto by_count = order_ranges({p3, p7});
    CHECK(by_count[0].host_count() == 7);

    auto a = range_of("10.1.0.0", "10.1.0.9", 4, AddressClass::Private);
    auto b = range_of("10.0.0.0", "10.0.0.9", 4, AddressClass::Private);
    auto by_start = order_ranges({a, b});
    CHECK(by_start[0].start == ip("10.0.0.0"));
    CHECK(by_start[1].start == ip("10.1.0.0"));

    // permutation, never mutation
    auto original = std::vector<NetworkRange>{p, g, l};
    auto result = order_ranges(original);
    CHECK(result.size() == original.size());
    for (const auto& range : original)
        CHECK(std::count(result.begin(), result.end(), range) == 1);
}
