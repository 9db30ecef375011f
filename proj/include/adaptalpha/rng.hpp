#pragma once

#include <array>
#include <cstdint>

#include "adaptalpha/special_functions.hpp"

namespace adaptalpha {

// Deterministic, platform-independent random streams: xoshiro256++ state
// derived from (seed, id0, id1) via splitmix64. Replicate work keyed by its
// index gets the same draws regardless of scheduling or worker count.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t id0, std::uint64_t id1 = 0) {
        std::uint64_t h = seed;
        h = mix(h ^ mix(id0 + 0x9e3779b97f4a7c15ull));
        h = mix(h ^ mix(id1 + 0xbf58476d1ce4e5b9ull));
        for (auto& word : state_) {
            h += 0x9e3779b97f4a7c15ull;
            word = mix(h);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on the open interval (0,1)
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_normal() { return special::normal_quantile(next_double()); }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    // splitmix64 finalizer
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::array<std::uint64_t, 4> state_;
};

}  // namespace adaptalpha
