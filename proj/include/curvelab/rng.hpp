#pragma once

#include <cstdint>

namespace curvelab {

// SplitMix64: small, fully specified, fast. Used for Monte Carlo index
// draws and test fuzzing so results are identical across standard
// libraries (std::uniform_int_distribution is not pinned by the standard).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // uniform in [0, n); n > 0. Multiply-shift reduction; the modulo bias is
    // below 2^-32 for the n used here, well under quadrature noise.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

// Independent substream seed for work item `index` under a global seed.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x632be59bd9b4e019ULL + index * 0x9e3779b97f4a7c15ULL));
    return mix.next();
}

} // namespace curvelab
