// Splittable deterministic random streams. Every stochastic component of
// the project (simulation shards, optimizer restarts) draws from a stream
// derived as mix(seed, index), so runs are reproducible without any
// cross-task coordination.

#pragma once

#include <array>
#include <cstdint>

namespace qcard::rng {

/// splitmix64: fixed-increment 64-bit generator with a strong finalizer.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Inverse-CDF draw from up to n categories (n <= 4 in this project).
    /// Probabilities need not sum exactly to 1; the last bucket absorbs the
    /// rounding remainder.
    template <std::size_t N>
    int categorical(const std::array<double, N>& probs) {
        double u = uniform();
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < N; ++i) {
            acc += probs[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(N - 1);
    }

private:
    std::uint64_t state_;
};

/// Stream seed for (seed, index): both arguments pass through the splitmix
/// finalizer so neighboring indices yield unrelated streams.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 a(seed);
    std::uint64_t mixed = a.next();
    SplitMix64 b(mixed + (index + 1) * 0x9e3779b97f4a7c15ULL);
    return b.next();
}

}  // namespace qcard::rng
