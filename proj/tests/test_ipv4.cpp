#include "doctest.h"
#include "netscope/ipv4.hpp"

#include <random>

using namespace netscope;

TEST_CASE("address parse and format round-trip") {
    auto ip = Ipv4Address::parse("192.168.0.7");
    REQUIRE(ip.has_value());
    CHECK(ip->to_string() == "192.168.0.7");
    CHECK(ip->value() == 0xC0A80007u);
    CHECK(Ipv4Address::from_octets(10, 0, 0, 5).to_string() == "10.0.0.5");

    CHECK_FALSE(Ipv4Address::parse("").has_value());
    CHECK_FALSE(Ipv4Address::parse("1.2.3").has_value());
    CHECK_FALSE(Ipv4Address::parse("1.2.3.4.5").has_value());
    CHECK_FALSE(Ipv4Address::parse("256.0.0.1").has_value());
    CHECK_FALSE(Ipv4Address::parse("a.b.c.d").has_value());
    CHECK_FALSE(Ipv4Address::parse("1.2.3.04").has_value());
    CHECK_FALSE(Ipv4Address::parse("1.2.3.4 ").has_value());
}

TEST_CASE("special address predicates") {
    CHECK(Ipv4Address::parse("0.0.0.0")->is_unspecified());
    CHECK(Ipv4Address::parse("255.255.255.255")->is_limited_broadcast());
    CHECK(Ipv4Address::parse("224.0.0.1")->is_multicast());
    CHECK(Ipv4Address::parse("239.255.255.255")->is_multicast());
    CHECK_FALSE(Ipv4Address::parse("223.255.255.255")->is_multicast());
    CHECK_FALSE(Ipv4Address::parse("240.0.0.0")->is_multicast());
}

TEST_CASE("cidr parse, containment, usable addresses") {
    auto block = CidrBlock::parse("10.0.1.0/24");
    REQUIRE(block.has_value());
    CHECK(block->network_address().to_string() == "10.0.1.0");
    CHECK(block->broadcast_address().to_string() == "10.0.1.255");
    CHECK(block->first_usable().to_string() == "10.0.1.1");
    CHECK(block->last_usable().to_string() == "10.0.1.254");
    CHECK(block->size() == 256);
    CHECK(block->contains(*Ipv4Address::parse("10.0.1.200")));
    CHECK_FALSE(block->contains(*Ipv4Address::parse("10.0.2.0")));

    // host bits are masked off
    CHECK(CidrBlock::parse("10.0.1.77/24")->network_address().to_string() == "10.0.1.0");

    CHECK_FALSE(CidrBlock::parse("10.0.1.0/33").has_value());
    CHECK_FALSE(CidrBlock::parse("10.0.1.0").has_value());
    CHECK_FALSE(CidrBlock::parse("10.0.1/24").has_value());

    // /31 and /32 have no reserved addresses
    auto p31 = CidrBlock::parse("10.0.0.0/31");
    CHECK(p31->first_usable().to_string() == "10.0.0.0");
    CHECK(p31->last_usable().to_string() == "10.0.0.1");
    auto p32 = CidrBlock::parse("10.0.0.5/32");
    CHECK(p32->first_usable() == p32->last_usable());

    auto all = CidrBlock::parse("0.0.0.0/0");
    CHECK(all->size() == uint64_t(1) << 32);
    CHECK(all->contains(*Ipv4Address::parse("255.255.255.255")));
}

TEST_CASE("smallest covering block") {
    auto a = *Ipv4Address::parse("10.0.1.3");
    auto b = *Ipv4Address::parse("10.0.1.200");
    CHECK(CidrBlock::smallest_covering(a, b).to_string() == "10.0.1.0/24");
    CHECK(CidrBlock::smallest_covering(a, a).to_string() == "10.0.1.3/32");

    // straddles the /24 boundary, needs /23
    auto c = *Ipv4Address::parse("10.0.0.200");
    auto d = *Ipv4Address::parse("10.0.1.5");
    CHECK(CidrBlock::smallest_covering(c, d).to_string() == "10.0.0.0/23");
}

TEST_CASE("range summarization covers exactly and minimally") {
    auto check_exact = [](const char* lo, const char* hi) {
        auto start = *Ipv4Address::parse(lo);
        auto end = *Ipv4Address::parse(hi);
        auto blocks = CidrBlock::summarize_range(start, end);
        uint64_t expect = start.value();
        for (const auto& block : blocks) {
            REQUIRE(block.network_address().value() == expect);
            expect += block.size();
        }
        CHECK(expect == uint64_t(end.value()) + 1);
        return blocks;
    };

    CHECK(check_exact("10.0.1.0", "10.0.1.255").size() == 1);
    CHECK(check_exact("10.0.1.3", "10.0.1.3").size() == 1);
    auto blocks = check_exact("10.0.1.3", "10.0.2.17");
    CHECK(blocks.size() > 1);

    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        uint32_t x = uint32_t(rng()), y = uint32_t(rng());
        if (x > y) std::swap(x, y);
        check_exact(Ipv4Address(x).to_string().c_str(), Ipv4Address(y).to_string().c_str());
    }
}
