#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace brwlab {

// Identifies one random stream: a master seed plus a derivation path
// (module tag, purpose tag, replica index, ...). Identical specs yield
// bit-identical streams; sibling streams are statistically independent.
struct StreamSpec {
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> path;
};

// Fixed path tags so manifests can name where a stream was used.
namespace stream_tag {
inline constexpr std::uint64_t tree = 1;
inline constexpr std::uint64_t labels = 2;
inline constexpr std::uint64_t walk = 3;
inline constexpr std::uint64_t percolation = 4;
inline constexpr std::uint64_t recurrence = 5;
inline constexpr std::uint64_t mtp = 6;
inline constexpr std::uint64_t flow = 7;
inline constexpr std::uint64_t acceptance = 8;
} // namespace stream_tag

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ generator seeded through splitmix64. Streams are derived
// by folding each path component into the seed state with a keyed mix,
// so (seed, path) -> stream is a pure function.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) { reseed(seed); }

    explicit RandomStream(const StreamSpec& spec) {
        std::uint64_t h = spec.master_seed;
        for (std::uint64_t p : spec.path) {
            std::uint64_t key = p;
            h ^= splitmix64(key) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        reseed(h);
    }

    static RandomStream derive(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
        StreamSpec spec;
        spec.master_seed = master;
        spec.path.assign(path.begin(), path.end());
        return RandomStream(spec);
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

    // Uniform double in [0, 1), 53 mantissa bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, n). Lemire's method with rejection.
    std::uint32_t next_below(std::uint32_t n) {
        std::uint64_t x = next_u64() >> 32;
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m & 0xFFFFFFFFULL);
        if (lo < n) {
            const std::uint64_t threshold = (0x100000000ULL - n) % n;
            while (lo < threshold) {
                x = next_u64() >> 32;
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m & 0xFFFFFFFFULL);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    bool bernoulli(double p) { return next_double() < p; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    void reseed(std::uint64_t seed) {
        for (auto& w : s_) w = splitmix64(seed);
        // All-zero state is invalid for xoshiro; splitmix never yields four zeros
        // from any seed, but keep the guard cheap and explicit.
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t s_[4];
};

} // namespace brwlab
