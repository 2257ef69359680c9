#pragma once

// Seeded Monte Carlo realizations of the joint detection statistics:
// categorical sampling of pair outcomes, timestamped detection streams with
// jitter and Poisson background singles, greedy coincidence matching, and
// correlation estimates with standard errors.
//
// Every operation is a pure function of (inputs, seed); see rng.hpp for the
// documented counter-based generator. Chunked evaluation with the same seed
// reproduces sequential results exactly.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qopt/nonlocal.hpp"

namespace qopt {
namespace stochastic {

/// Counts per joint outcome; index [a][b] with a: 0 = A1, 1 = A2 and
/// b: 0 = B1, 1 = B2.
struct Tally {
    std::array<std::array<std::uint64_t, 2>, 2> counts{{{0, 0}, {0, 0}}};
    std::uint64_t total = 0;

    std::uint64_t n11() const { return counts[0][0]; }
    std::uint64_t n12() const { return counts[0][1]; }
    std::uint64_t n21() const { return counts[1][0]; }
    std::uint64_t n22() const { return counts[1][1]; }

    void add(int a, int b) {
        ++counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        ++total;
    }
    Tally& merge(const Tally& other);
};

struct DetectionEvent {
    double time = 0.0; // seconds
    std::string detector;
};

/// Time-ordered list of detection events on one side.
struct DetectionStream {
    std::vector<DetectionEvent> events;
};

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

// n independent draws from the four-outcome distribution. Deterministic
// given the seed; draw i depends only on (seed, i).
Tally sample_joint(const nonlocal::CorrelationStats& stats, std::uint64_t n,
                   std::uint64_t seed);

// Same draws evaluated as `chunks` contiguous counter ranges whose tallies
// are merged. Because each draw is a pure function of (seed, index), the
// result is identical to sample_joint for every chunk count, so chunks can
// be distributed across workers freely.
Tally sample_joint_chunked(const nonlocal::CorrelationStats& stats, std::uint64_t n,
                           std::uint64_t seed, std::uint64_t chunks);

// Degree-of-correlation estimate from counts:
//   value = (n11 + n22 - n12 - n21) / n,  std_error = sqrt((1 - value^2)/n).
// Throws EmptyTallyError when the tally is empty.
Estimate estimate_correlation(const Tally& tally);

struct PairStreams {
    DetectionStream a;
    DetectionStream b;
    Tally emitted; // ground-truth pair outcomes, for validation
};

// n pair events at exponentially spaced emission times (mean
// `mean_interval`), each photon's detection time offset by independent
// Gaussian jitter; independent Poisson background singles at
// `background_rate` are mixed into each stream over the emission span.
PairStreams generate_streams(const nonlocal::CorrelationStats& stats, std::uint64_t n,
                             double mean_interval, double jitter,
                             double background_rate, std::uint64_t seed);

// Poisson singles at `rate` over [0, duration], each event assigned to one
// of the two detector labels on a fair coin. Used for background-only runs.
DetectionStream background_stream(double rate, double duration,
                                  const std::array<std::string, 2>& detectors,
                                  std::uint64_t seed);

struct MatchResult {
    Tally tally;
    std::uint64_t unmatched_a = 0;
    std::uint64_t unmatched_b = 0;
};

// Greedy nearest-in-time pairing of events across the two sorted streams;
// |dt| <= window, each event used at most once, ties broken toward the
// earlier event. Linear in the stream lengths.
MatchResult coincidence_match(const DetectionStream& a, const DetectionStream& b,
                              double window);

} // namespace stochastic
} // namespace qopt
