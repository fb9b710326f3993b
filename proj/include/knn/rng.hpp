#pragma once

#include <cstdint>

namespace knn {

// Deterministic 64-bit generator with a byte-stable output sequence, so
// seeded data is identical across platforms and standard libraries.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 24-bit resolution, exactly representable in float.
    float next_unit_float() {
        return static_cast<float>(next() >> 40) * 0x1.0p-24f;
    }

    // Independent derived stream.
    SplitMix64 split() { return SplitMix64(next() ^ 0xa5a5a5a5a5a5a5a5ull); }

private:
    std::uint64_t state_;
};

}  // namespace knn
