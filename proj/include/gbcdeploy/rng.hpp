#pragma once

#include <cstdint>

namespace gbcdeploy {

// Portable, seedable generators. Results must reproduce bit-for-bit across
// platforms, so none of the std <random> distributions are used anywhere;
// sampling goes through the rejection helpers below.

/// SplitMix64 (Steele, Lea, Flood 2014). Used to expand user seeds into
/// generator state and to derive independent per-seed streams.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256** 1.0 (Blackman, Vigna 2018). State seeded via SplitMix64 so
/// an all-zero user seed is safe.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform draw from [0, bound) by rejection; unbiased and portable.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

/// Stream seed for (user_seed, stream_id) pairs, e.g. one BA growth stream
/// per (seed, m_attach) combination.
inline std::uint64_t derive_stream_seed(std::uint64_t user_seed, std::uint64_t stream_id) {
    SplitMix64 sm(user_seed);
    std::uint64_t base = sm.next();
    return SplitMix64(base ^ (0xD1B54A32D192ED03ULL * (stream_id + 1))).next();
}

} // namespace gbcdeploy
