#ifndef C2K_RNG_H
#define C2K_RNG_H

#include <cstdint>
#include <limits>

namespace c2k {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from a global seed and up to three
/// coordinates (e.g. purpose, node id, phase or iteration).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = mix64(seed ^ 0x243f6a8885a308d3ULL);
    h = mix64(h ^ a);
    h = mix64(h ^ (b + 0x13198a2e03707344ULL));
    h = mix64(h ^ (c + 0xa4093822299f31d0ULL));
    return h;
}

/// Cheap SplitMix64 engine; satisfies UniformRandomBitGenerator so it plugs
/// into the <random> distributions.
class StreamRng {
   public:
    using result_type = std::uint64_t;
    explicit constexpr StreamRng(std::uint64_t seed) : state_(seed) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    constexpr result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

   private:
    std::uint64_t state_;
};

/// Stream purposes; keep values stable, they are part of the reproducibility contract.
enum class Stream : std::uint64_t {
    selection = 1,
    coloring = 2,
    activation = 3,
    generator = 4,
    trial = 5,
    call = 6,
};

}  // namespace c2k

#endif
