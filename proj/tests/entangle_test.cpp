#include "doctest.h"

#include <cmath>
#include <random>

#include "qopt/entangle.hpp"
#include "test_helpers.hpp"

using namespace qopt;
using namespace qopt::entangle;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490393;

const Basis kSys{kSystem1, kSystem2};

Ket balanced_system() { return normalize(kSys, std::vector<Complex>{1.0, 1.0}); }
} // namespace

TEST_CASE("premeasure correlates basis states with pointer states") {
    const BipartiteState recorded = premeasure(Ket::basis_state(kSys, kSystem1));
    CHECK(std::abs(recorded.amplitude(kSystem1, "1") - Complex(1.0, 0.0)) < kAmpTol);
    CHECK(recorded.prob(kSystem1, "2") == 0.0);
    CHECK(recorded.prob(kSystem2, "1") == 0.0);

    const BipartiteState correlated = premeasure(balanced_system());
    CHECK(std::abs(correlated.amplitude(kSystem1, "1").real() - kInvSqrt2) < kAmpTol);
    CHECK(std::abs(correlated.amplitude(kSystem2, "2").real() - kInvSqrt2) < kAmpTol);
    CHECK(correlated.prob(kSystem1, "2") < kAmpTol);
    CHECK(correlated.prob(kSystem2, "1") < kAmpTol);

    const BipartiteState skewed =
        premeasure(normalize(kSys, std::vector<Complex>{0.6, 0.8}));
    CHECK(std::abs(skewed.amplitude(kSystem1, "1") - Complex(0.6, 0.0)) < kAmpTol);
    CHECK(std::abs(skewed.amplitude(kSystem2, "2") - Complex(0.8, 0.0)) < kAmpTol);
    CHECK(std::abs(skewed.amplitudes().norm() - 1.0) < kAmpTol);

    const Ket wrong = Ket::basis_state(Basis{"u", "v"}, "u");
    CHECK_THROWS_AS(premeasure(wrong), BasisMismatchError);
}

TEST_CASE("is_product separates correlated states from factorable ones") {
    CHECK_FALSE(is_product(premeasure(balanced_system())));
    CHECK(is_product(premeasure(Ket::basis_state(kSys, kSystem1))));
    CHECK(is_product(premeasure(Ket::basis_state(kSys, kSystem2))));

    // A barely-correlated branch still counts as entangled: coefficients
    // come out near (0.9999995, 1e-3), well above the rank cutoff.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 0.999;
    m(1, 1) = 1e-3;
    m /= m.norm();
    const BipartiteState faint(kSys, Basis{"1", "2"}, m);
    CHECK_FALSE(is_product(faint));
    const auto coeffs = schmidt(faint);
    REQUIRE(coeffs.size() == 2);
    CHECK(coeffs[1] == doctest::Approx(1e-3).epsilon(1e-3));
}

TEST_CASE("local_pure_consistency identifies which subsystems have pure states") {
    const BipartiteState correlated = premeasure(balanced_system());
    const Basis pointer{"1", "2"};

    const Ket pointer_superposition = normalize(pointer, std::vector<Complex>{1.0, 1.0});
    CHECK_FALSE(local_pure_consistency(correlated, Side::B, pointer_superposition));
    CHECK_FALSE(local_pure_consistency(correlated, Side::B,
                                       Ket::basis_state(pointer, "1")));

    const BipartiteState product = premeasure(Ket::basis_state(kSys, kSystem1));
    CHECK(local_pure_consistency(product, Side::B, Ket::basis_state(pointer, "1")));
    CHECK(local_pure_consistency(product, Side::A, Ket::basis_state(kSys, kSystem1)));

    CHECK_THROWS_AS(
        local_pure_consistency(correlated, Side::B, Ket::basis_state(kSys, kSystem1)),
        BasisMismatchError);
}

TEST_CASE("cross_term_weight reads the off-diagonal of the reduced operator") {
    // A genuine single-system superposition carries full cross-terms.
    CHECK(cross_term_weight(density_of(balanced_system())) ==
          doctest::Approx(1.0).epsilon(1e-14));

    const BipartiteState correlated = premeasure(balanced_system());
    CHECK(cross_term_weight(correlated, Side::A) < kAmpTol);
    CHECK(cross_term_weight(correlated, Side::B) < kAmpTol);

    // Overlapping pointers only partially decohere the system.
    const BipartiteState partial = premeasure_overlapping(balanced_system(), 0.5);
    CHECK(cross_term_weight(partial, Side::A) == doctest::Approx(0.5).epsilon(1e-12));

    const Basis three{"x", "y", "z"};
    const DensityOperator big(three, Eigen::MatrixXcd::Identity(3, 3) / 3.0);
    CHECK_THROWS_AS(cross_term_weight(big), DimensionError);
}

TEST_CASE("overlapping pointers interpolate the recorded visibility") {
    for (double overlap : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const BipartiteState state = premeasure_overlapping(balanced_system(), overlap);
        CHECK(std::abs(state.amplitudes().norm() - 1.0) < kAmpTol);
        CHECK(cross_term_weight(state, Side::A) ==
              doctest::Approx(overlap).epsilon(1e-12));
    }
    CHECK_THROWS_AS(premeasure_overlapping(balanced_system(), 1.5), DomainError);
}

TEST_CASE("property: premeasure preserves the norm") {
    std::mt19937_64 rng(808);
    for (int i = 0; i < 100; ++i) {
        const BipartiteState state = premeasure(testing::random_ket(kSys, rng));
        CHECK(std::abs(state.amplitudes().norm() - 1.0) < kAmpTol);
    }
}

TEST_CASE("property: recording a strict superposition leaves no subsystem pure") {
    std::mt19937_64 rng(1905);
    std::uniform_real_distribution<double> mix_angle(0.05, kPi / 2.0 - 0.05);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    const Basis pointer{"1", "2"};

    for (int i = 0; i < 100; ++i) {
        const double theta = mix_angle(rng);
        const Ket input(kSys, Eigen::Vector2cd(std::cos(theta),
                                               std::polar(std::sin(theta), phase(rng))));
        const BipartiteState state = premeasure(input);
        CHECK_FALSE(is_product(state));

        const Ket candidate_a = testing::random_ket(kSys, rng);
        const Ket candidate_b = testing::random_ket(pointer, rng);
        CHECK_FALSE(local_pure_consistency(state, Side::A, candidate_a));
        CHECK_FALSE(local_pure_consistency(state, Side::B, candidate_b));
    }
}

TEST_CASE("property: local statistics are blind to the correlation phase") {
    std::mt19937_64 rng(62);
    std::uniform_real_distribution<double> phase(-8.0, 8.0);
    for (int i = 0; i < 100; ++i) {
        MeasurementSetup setup;
        setup.correlation_phase = phase(rng);
        const BipartiteState state = premeasure(balanced_system(), setup);
        CHECK(cross_term_weight(state, Side::A) < kAmpTol);
        CHECK(cross_term_weight(state, Side::B) < kAmpTol);

        for (Side side : {Side::A, Side::B}) {
            const auto reduced = partial_trace(state, side);
            CHECK(testing::max_abs_diff(reduced.matrix(),
                                        Eigen::MatrixXcd::Identity(2, 2) / 2.0) < kAmpTol);
        }
    }
}

TEST_CASE("cross-module property: single nonzero Schmidt coefficient iff product") {
    std::mt19937_64 rng(777);
    const Basis pointer{"1", "2"};
    for (int i = 0; i < 50; ++i) {
        const BipartiteState entangled_or_not =
            testing::random_bipartite(kSys, pointer, rng);
        const auto coeffs = schmidt(entangled_or_not);
        std::size_t nonzero = 0;
        for (double c : coeffs) {
            if (c > 0.0) ++nonzero;
        }
        CHECK((nonzero == 1) == is_product(entangled_or_not));

        const BipartiteState product =
            tensor(testing::random_ket(kSys, rng), testing::random_ket(pointer, rng));
        CHECK(is_product(product));
        CHECK(schmidt(product).size() == 1);
    }
}
