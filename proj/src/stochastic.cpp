#include "qopt/stochastic.hpp"

#include <algorithm>
#include <cmath>

#include "qopt/rng.hpp"

namespace qopt {
namespace stochastic {

namespace {

// Sub-stream indices off the user seed; each consumer owns one stream.
enum Stream : std::uint64_t {
    kJointDraws = 0,
    kEmissionGaps = 1,
    kPairOutcomes = 2,
    kJitterA = 3,
    kJitterB = 4,
    kBackgroundA = 5,
    kBackgroundB = 6,
};

std::pair<int, int> draw_outcome(const nonlocal::CorrelationStats& stats, double u) {
    if (u < stats.p11) return {0, 0};
    if (u < stats.p11 + stats.p12) return {0, 1};
    if (u < stats.p11 + stats.p12 + stats.p21) return {1, 0};
    return {1, 1};
}

int detector_index(const std::string& label, const std::string& first,
                   const std::string& second) {
    if (label == first) return 0;
    if (label == second) return 1;
    throw DomainError("coincidence_match: unexpected detector label '" + label + "'");
}

void sort_stream(DetectionStream& stream) {
    std::sort(stream.events.begin(), stream.events.end(),
              [](const DetectionEvent& x, const DetectionEvent& y) {
                  return x.time != y.time ? x.time < y.time : x.detector < y.detector;
              });
}

} // namespace

Tally& Tally::merge(const Tally& other) {
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            counts[a][b] += other.counts[a][b];
        }
    }
    total += other.total;
    return *this;
}

Tally sample_joint(const nonlocal::CorrelationStats& stats, std::uint64_t n,
                   std::uint64_t seed) {
    const CounterRng rng = CounterRng::stream(seed, kJointDraws);
    Tally tally;
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto [a, b] = draw_outcome(stats, rng.uniform(i));
        tally.add(a, b);
    }
    return tally;
}

Tally sample_joint_chunked(const nonlocal::CorrelationStats& stats, std::uint64_t n,
                           std::uint64_t seed, std::uint64_t chunks) {
    if (chunks == 0) {
        throw DomainError("sample_joint_chunked: need at least one chunk");
    }
    const CounterRng rng = CounterRng::stream(seed, kJointDraws);
    Tally total;
    for (std::uint64_t c = 0; c < chunks; ++c) {
        const std::uint64_t begin = n * c / chunks;
        const std::uint64_t end = n * (c + 1) / chunks;
        Tally chunk;
        for (std::uint64_t i = begin; i < end; ++i) {
            const auto [a, b] = draw_outcome(stats, rng.uniform(i));
            chunk.add(a, b);
        }
        total.merge(chunk);
    }
    return total;
}

Estimate estimate_correlation(const Tally& tally) {
    if (tally.total == 0) {
        throw EmptyTallyError("estimate_correlation: empty tally");
    }
    const double n = static_cast<double>(tally.total);
    const double value =
        (static_cast<double>(tally.n11()) + static_cast<double>(tally.n22()) -
         static_cast<double>(tally.n12()) - static_cast<double>(tally.n21())) /
        n;
    Estimate est;
    est.value = value;
    est.std_error = std::sqrt(std::max(0.0, 1.0 - value * value) / n);
    est.n = tally.total;
    return est;
}

DetectionStream background_stream(double rate, double duration,
                                  const std::array<std::string, 2>& detectors,
                                  std::uint64_t seed) {
    if (rate < 0.0) {
        throw DomainError("background_stream: negative rate");
    }
    DetectionStream stream;
    if (rate == 0.0 || duration <= 0.0) {
        return stream;
    }
    const CounterRng rng(seed);
    double t = 0.0;
    for (std::uint64_t k = 0;; ++k) {
        t += rng.exponential(2 * k, 1.0 / rate);
        if (t > duration) break;
        stream.events.push_back({t, detectors[rng.coin(2 * k + 1) ? 1 : 0]});
    }
    return stream;
}

PairStreams generate_streams(const nonlocal::CorrelationStats& stats, std::uint64_t n,
                             double mean_interval, double jitter,
                             double background_rate, std::uint64_t seed) {
    if (!(mean_interval > 0.0)) {
        throw DomainError("generate_streams: mean interval must be positive");
    }
    if (jitter < 0.0) {
        throw DomainError("generate_streams: negative jitter");
    }
    if (background_rate < 0.0) {
        throw DomainError("generate_streams: negative background rate");
    }

    const CounterRng gaps = CounterRng::stream(seed, kEmissionGaps);
    const CounterRng outcomes = CounterRng::stream(seed, kPairOutcomes);
    const CounterRng jitter_a = CounterRng::stream(seed, kJitterA);
    const CounterRng jitter_b = CounterRng::stream(seed, kJitterB);

    PairStreams out;
    double t = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        t += gaps.exponential(i, mean_interval);
        const auto [a, b] = draw_outcome(stats, outcomes.uniform(i));
        out.emitted.add(a, b);
        const double ta = jitter > 0.0 ? t + jitter * jitter_a.gaussian(i) : t;
        const double tb = jitter > 0.0 ? t + jitter * jitter_b.gaussian(i) : t;
        out.a.events.push_back({ta, a == 0 ? nonlocal::kDetA1 : nonlocal::kDetA2});
        out.b.events.push_back({tb, b == 0 ? nonlocal::kDetB1 : nonlocal::kDetB2});
    }

    if (background_rate > 0.0 && t > 0.0) {
        const DetectionStream bg_a =
            background_stream(background_rate, t, {nonlocal::kDetA1, nonlocal::kDetA2},
                              CounterRng::derive(seed, kBackgroundA));
        const DetectionStream bg_b =
            background_stream(background_rate, t, {nonlocal::kDetB1, nonlocal::kDetB2},
                              CounterRng::derive(seed, kBackgroundB));
        out.a.events.insert(out.a.events.end(), bg_a.events.begin(), bg_a.events.end());
        out.b.events.insert(out.b.events.end(), bg_b.events.begin(), bg_b.events.end());
    }

    sort_stream(out.a);
    sort_stream(out.b);
    return out;
}

MatchResult coincidence_match(const DetectionStream& a, const DetectionStream& b,
                              double window) {
    if (window < 0.0) {
        throw DomainError("coincidence_match: negative window");
    }
    MatchResult result;
    std::size_t j = 0;
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        if (j >= b.events.size()) {
            result.unmatched_a += a.events.size() - i;
            return result;
        }
        const double ta = a.events[i].time;
        // Advance past b events that are strictly farther from this a than
        // their successor; ties keep the earlier event.
        while (j + 1 < b.events.size() &&
               std::abs(b.events[j + 1].time - ta) < std::abs(b.events[j].time - ta)) {
            ++j;
            ++result.unmatched_b;
        }
        if (std::abs(b.events[j].time - ta) <= window) {
            result.tally.add(
                detector_index(a.events[i].detector, nonlocal::kDetA1, nonlocal::kDetA2),
                detector_index(b.events[j].detector, nonlocal::kDetB1, nonlocal::kDetB2));
            ++j;
        } else {
            ++result.unmatched_a;
        }
    }
    result.unmatched_b += b.events.size() - j;
    return result;
}

} // namespace stochastic
} // namespace qopt
