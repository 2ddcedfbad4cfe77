// Decoder totality fuzz. Built with ASan/UBSan regardless of the main build
// flags; every buffer is heap-allocated at its exact size so any read past
// the captured bytes trips the sanitizer.

#include <cstdio>
#include <cstdlib>
#include <random>
#include <variant>

#include "netscope/packet_codec.hpp"

int main(int argc, char** argv) {
    uint64_t iterations = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1'000'000;
    std::mt19937_64 rng(0xF00DF00D);

    uint64_t arp = 0, ip = 0, ignored = 0;
    for (uint64_t i = 0; i < iterations; ++i) {
        size_t len = rng() % 201;
        std::vector<uint8_t> bytes(len);
        for (auto& b : bytes) b = uint8_t(rng());
        // steer a share of inputs into the interesting EtherTypes
        if (len >= 14) {
            switch (i % 4) {
                case 0: bytes[12] = 0x08; bytes[13] = 0x00; break;
                case 1: bytes[12] = 0x08; bytes[13] = 0x06; break;
                case 2: bytes[12] = 0x81; bytes[13] = 0x00; break;
                default: break;
            }
        }
        auto decoded = netscope::decode_frame(bytes, int64_t(i));
        if (std::holds_alternative<netscope::ArpSummary>(decoded))
            ++arp;
        else if (std::holds_alternative<netscope::IpSummary>(decoded))
            ++ip;
        else
            ++ignored;
    }
    std::printf("fuzz_decode: %llu frames, %llu arp, %llu ip, %llu ignored\n",
                (unsigned long long)iterations, (unsigned long long)arp,
                (unsigned long long)ip, (unsigned long long)ignored);
    return 0;
}
