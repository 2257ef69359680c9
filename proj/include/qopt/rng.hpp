#pragma once

// Counter-based reproducible random numbers built on the SplitMix64 mixer
// (Vigna's fixed-increment finalizer, public domain reference algorithm).
// Output i of a stream with seed s is
//
//     out(i) = mix64(s + (i + 1) * 0x9e3779b97f4a7c15)
//
// which is exactly the canonical SplitMix64 sequence seeded with s, but
// addressable by counter, so draws are pure functions of (seed, counter)
// and chunked/parallel sampling reproduces sequential results bit for bit.
//
// Reference outputs of the canonical sequence (counter 0, 1, 2):
//   seed 0  -> 0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4, 0x06c45d188009454f
//   seed 42 -> 0xbdd732262feb6e95, 0x28efe333b266f103, 0x47526757130f9f52
//
// Independent sub-streams are derived as child(seed, k) =
// mix64(seed + (k + 1) * 0x8bb84b93962eacc9); each consumer of randomness
// owns one sub-stream so adding draws to one never shifts another.

#include <cmath>
#include <cstdint>

namespace qopt {

inline constexpr std::uint64_t kSplitMixGamma = 0x9e3779b97f4a7c15ULL;
inline constexpr std::uint64_t kStreamGamma = 0x8bb84b93962eacc9ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    // Seed of an independent sub-stream.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        return mix64(seed + (stream + 1) * kStreamGamma);
    }
    static CounterRng stream(std::uint64_t seed, std::uint64_t stream_index) {
        return CounterRng(derive(seed, stream_index));
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t at(std::uint64_t counter) const {
        return mix64(seed_ + (counter + 1) * kSplitMixGamma);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
    }

    // Uniform in (0, 1]; safe under log().
    double uniform_open(std::uint64_t counter) const {
        return static_cast<double>((at(counter) >> 11) + 1) * 0x1.0p-53;
    }

    bool coin(std::uint64_t counter) const { return (at(counter) & 1ULL) != 0; }

    // Standard normal via Box-Muller, clamped to +/-6 sigma so jittered
    // event streams stay sortable with bounded lookback (clamp bias < 1e-9).
    // Consumes counters 2*counter and 2*counter + 1.
    double gaussian(std::uint64_t counter) const {
        const double u1 = uniform_open(2 * counter);
        const double u2 = uniform(2 * counter + 1);
        const double z = std::sqrt(-2.0 * std::log(u1)) *
                         std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
        if (z > 6.0) return 6.0;
        if (z < -6.0) return -6.0;
        return z;
    }

    // Exponential with the given mean.
    double exponential(std::uint64_t counter, double mean) const {
        return -mean * std::log(uniform_open(counter));
    }

  private:
    std::uint64_t seed_;
};

} // namespace qopt
