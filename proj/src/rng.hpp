#pragma once

#include <cstdint>

namespace layoutlab {

// SplitMix64 (Steele, Lea, Flood 2014). One multiply-xorshift chain per
// draw, 64 bits of state, trivially seedable. Every generated maze is a
// pure function of (width, height, seed) through this generator, so the
// algorithm is part of the file-format contract and must not change.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform-enough draw in [0, n). Modulo bias is irrelevant for the
    // tiny n (< 5) used during maze carving.
    std::uint32_t below(std::uint32_t n) {
        return static_cast<std::uint32_t>(next() % n);
    }

private:
    std::uint64_t state_;
};

}  // namespace layoutlab
