#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace vhalab {

// splitmix64 step; used to expand seeds so that nearby integer seeds
// give unrelated streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// FNV-1a over the bytes of a string.  Platform independent; used to
// derive per-run seeds from human readable labels.
inline std::uint64_t stable_hash(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Deterministic random source.  Doubles are produced by an explicit
// bit conversion rather than std::uniform_real_distribution so that
// the byte-for-byte output does not depend on the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        // Seed the full mt19937_64 state from splitmix64 as recommended
        // for generators with large state.
        std::seed_seq seq{splitmix64(s), splitmix64(s), splitmix64(s), splitmix64(s)};
        engine_.seed(seq);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 bits of mantissa.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Derives an independent child seed from a parent seed and a pair of
// indices (for example an evaluation counter and a term index).
inline std::uint64_t substream_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = base;
    std::uint64_t m = splitmix64(s);
    s = m ^ (a * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL);
    m = splitmix64(s);
    s = m ^ (b * 0xd1342543de82ef95ULL + 0x13198a2e03707344ULL);
    return splitmix64(s);
}

} // namespace vhalab
