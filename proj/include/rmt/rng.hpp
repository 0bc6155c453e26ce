#pragma once

#include <array>
#include <cstdint>

namespace rmt {

// xoshiro256++ with splitmix64 seeding.  Substreams are derived from a
// (master seed, stream index) pair so that replicas can be generated in any
// order, or in parallel, and still reproduce the same draws.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) { seed_state(mix64(seed)); }

    RandomStream(std::uint64_t master, std::uint64_t stream_index) {
        // Decorrelate the index from the master seed before expanding the
        // state; plain master+index collides across (master, index) pairs.
        std::uint64_t h = mix64(master ^ 0x6a09e667f3bcc909ULL);
        h = mix64(h + 0x9e3779b97f4a7c15ULL * (stream_index + 1));
        seed_state(h);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0,1); safe as a log() argument.
    double next_open() {
        double u;
        do {
            u = next_unit();
        } while (u == 0.0);
        return u;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    // splitmix64 finalizer
    static std::uint64_t mix64(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    void seed_state(std::uint64_t h) {
        for (auto& w : s_) {
            h += 0x9e3779b97f4a7c15ULL;
            w = mix64(h);
        }
        // all-zero state is invalid for xoshiro
        if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) s_[0] = 1;
    }

    std::array<std::uint64_t, 4> s_{};
};

// Replica substream used everywhere an ensemble is generated.
inline RandomStream replica_stream(std::uint64_t master_seed, std::uint64_t replica) {
    return RandomStream(master_seed, replica);
}

}  // namespace rmt
