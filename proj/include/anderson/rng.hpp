#pragma once

#include <cstdint>

namespace anderson {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ seeded from (master_seed, trial, tag). Every random quantity
// in the library draws from a stream keyed this way, so results depend only
// on the seed material and never on scheduling or thread count.
class Rng {
  public:
    explicit Rng(std::uint64_t master_seed, std::uint64_t trial = 0, std::uint64_t tag = 0) {
        std::uint64_t h = 0x243f6a8885a308d3ULL;
        h ^= master_seed; (void)splitmix64(h);
        h ^= trial;       (void)splitmix64(h);
        h ^= tag;         (void)splitmix64(h);
        bool nonzero = false;
        for (auto& si : s_) {
            si = splitmix64(h);
            nonzero = nonzero || si != 0;
        }
        if (!nonzero) s_[0] = 1;
    }

    std::uint64_t next() {
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

    // in [0, 1)
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace anderson
