#pragma once

#include <cstdint>

namespace civet {

// SplitMix64. One state word, no warm-up cost, so a fresh generator per
// bootstrap replicate / per synthetic sample is cheap. Streams derived via
// split_stream(base, k) are what make parallel and serial execution produce
// bit-identical output: replicate k never shares state with replicate k+1.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    uint64_t next_below(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

private:
    uint64_t state_;
};

/// Derives an independent stream seed from (base seed, stream index).
/// Pure function; the finalizer mixing keeps nearby indices uncorrelated.
inline uint64_t split_stream(uint64_t base, uint64_t stream) {
    uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Execution policy for the data-parallel kernels. Every parallel kernel has
/// a serial twin that must produce bit-identical results; tests compare them.
enum class Exec { serial, parallel };

} // namespace civet
