#include "doctest.h"

#include <cmath>
#include <random>

#include "qopt/qcore.hpp"
#include "test_helpers.hpp"

using namespace qopt;

namespace {
const Basis kSys{"psi1", "psi2"};
const Basis kPtr{"1", "2"};
constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490393;

// The two-branch correlated state with equal weights, used throughout.
BipartiteState balanced_correlated_state() {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = kInvSqrt2;
    m(1, 1) = kInvSqrt2;
    return BipartiteState(kSys, kPtr, m);
}
} // namespace

TEST_CASE("normalize keeps direction and fixes the norm") {
    const Ket already = normalize(kSys, std::vector<Complex>{1.0, 0.0});
    CHECK(already.amplitude("psi1") == Complex(1.0, 0.0));
    CHECK(already.amplitude("psi2") == Complex(0.0, 0.0));

    const Ket balanced = normalize(kSys, std::vector<Complex>{1.0, 1.0});
    CHECK(balanced.amplitude("psi1").real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
    CHECK(balanced.amplitude("psi2").real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
    CHECK(std::abs(balanced.amplitudes().norm() - 1.0) < kAmpTol);

    const Ket phased = normalize(kSys, std::vector<Complex>{{0.0, 2.0}, 0.0});
    CHECK(std::abs(phased.amplitude("psi1") - Complex(0.0, 1.0)) < kAmpTol);
}

TEST_CASE("normalize rejects the zero vector") {
    CHECK_THROWS_AS(normalize(kSys, std::vector<Complex>{0.0, 0.0}), ZeroVectorError);
    CHECK_THROWS_AS(normalize(kSys, std::vector<Complex>{{1e-15, 0.0}, 0.0}),
                    ZeroVectorError);
}

TEST_CASE("ket construction validates basis and norm") {
    CHECK_THROWS_AS(Ket(Basis{"a", "a"}, Eigen::VectorXcd::Ones(2) / std::sqrt(2.0)),
                    BasisMismatchError);
    CHECK_THROWS_AS(Ket(kSys, Eigen::VectorXcd::Ones(2)), DomainError);
}

TEST_CASE("tensor builds the product state") {
    const Basis detector{"ready", "1", "2"};
    const Ket sys = Ket::basis_state(kSys, "psi1");
    const Ket det = Ket::basis_state(detector, "ready");
    const BipartiteState product = tensor(sys, det);

    CHECK(product.amplitude("psi1", "ready") == Complex(1.0, 0.0));
    CHECK(product.prob("psi2", "ready") == 0.0);
    CHECK(product.basis_a().size() * product.basis_b().size() == 6);

    std::mt19937_64 rng(7);
    const auto coeffs = schmidt(tensor(testing::random_ket(kSys, rng),
                                       testing::random_ket(kPtr, rng)));
    REQUIRE(coeffs.size() == 1);
    CHECK(coeffs[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("density_of is the projection operator") {
    const DensityOperator pure = density_of(Ket::basis_state(kSys, "psi1"));
    CHECK(pure.entry("psi1", "psi1") == Complex(1.0, 0.0));
    CHECK(pure.entry("psi2", "psi2") == Complex(0.0, 0.0));

    const Ket balanced = normalize(kSys, std::vector<Complex>{1.0, 1.0});
    const DensityOperator rho = density_of(balanced);
    for (const auto* row : {"psi1", "psi2"}) {
        for (const auto* col : {"psi1", "psi2"}) {
            CHECK(std::abs(rho.entry(row, col) - Complex(0.5, 0.0)) < kAmpTol);
        }
    }
    CHECK(std::abs(rho.matrix().trace() - Complex(1.0, 0.0)) < kAmpTol);
    // Projectors are idempotent.
    CHECK(testing::max_abs_diff(rho.matrix() * rho.matrix(), rho.matrix()) < kAmpTol);
}

TEST_CASE("expectation traces rho against the observable") {
    const DensityOperator mixture(kSys, Eigen::MatrixXcd::Identity(2, 2) / 2.0);
    const Observable onto1 = Observable::projector(Ket::basis_state(kSys, "psi1"));
    CHECK(expectation(mixture, onto1) == doctest::Approx(0.5).epsilon(1e-14));

    CHECK(expectation(mixture, Observable::identity(kSys)) ==
          doctest::Approx(1.0).epsilon(1e-14));

    const DensityOperator pure1 = density_of(Ket::basis_state(kSys, "psi1"));
    const Observable onto2 = Observable::projector(Ket::basis_state(kSys, "psi2"));
    CHECK(expectation(pure1, onto2) == doctest::Approx(0.0).epsilon(1e-14));

    const Observable wrong_basis = Observable::identity(kPtr);
    CHECK_THROWS_AS(expectation(mixture, wrong_basis), BasisMismatchError);
}

TEST_CASE("partial trace of the correlated state is the cross-term-free mixture") {
    const BipartiteState state = balanced_correlated_state();

    const DensityOperator reduced_a = partial_trace(state, Side::A);
    CHECK(std::abs(reduced_a.entry("psi1", "psi1") - Complex(0.5, 0.0)) < kAmpTol);
    CHECK(std::abs(reduced_a.entry("psi2", "psi2") - Complex(0.5, 0.0)) < kAmpTol);
    CHECK(std::abs(reduced_a.entry("psi1", "psi2")) < kAmpTol);
    CHECK(std::abs(reduced_a.entry("psi2", "psi1")) < kAmpTol);

    const DensityOperator reduced_b = partial_trace(state, Side::B);
    CHECK(reduced_b.basis() == kPtr);
    CHECK(std::abs(reduced_b.entry("1", "1") - Complex(0.5, 0.0)) < kAmpTol);
    CHECK(std::abs(reduced_b.entry("2", "2") - Complex(0.5, 0.0)) < kAmpTol);
    CHECK(std::abs(reduced_b.entry("1", "2")) < kAmpTol);

    const BipartiteState product =
        tensor(Ket::basis_state(kSys, "psi1"), Ket::basis_state(kPtr, "1"));
    const DensityOperator pure = partial_trace(product, Side::A);
    CHECK(std::abs(pure.entry("psi1", "psi1") - Complex(1.0, 0.0)) < kAmpTol);
    CHECK(std::abs(pure.entry("psi2", "psi2")) < kAmpTol);
}

TEST_CASE("partial trace accepts density operators over a product basis") {
    const BipartiteState state = balanced_correlated_state();
    const DensityOperator full = density_of(state);

    const DensityOperator via_operator = partial_trace(full, kSys, kPtr, Side::A);
    const DensityOperator via_state = partial_trace(state, Side::A);
    CHECK(testing::max_abs_diff(via_operator.matrix(), via_state.matrix()) < kAmpTol);

    const DensityOperator via_operator_b = partial_trace(full, kSys, kPtr, Side::B);
    CHECK(testing::max_abs_diff(via_operator_b.matrix(),
                                partial_trace(state, Side::B).matrix()) < kAmpTol);

    CHECK_THROWS_AS(partial_trace(full, kPtr, kSys, Side::A), NotProductBasisError);
}

TEST_CASE("schmidt coefficients") {
    // Balanced two-branch state: two equal coefficients 1/sqrt(2).
    const auto balanced = schmidt(balanced_correlated_state());
    REQUIRE(balanced.size() == 2);
    CHECK(balanced[0] == doctest::Approx(kInvSqrt2).epsilon(1e-14));
    CHECK(balanced[1] == doctest::Approx(kInvSqrt2).epsilon(1e-14));

    // Diagonal coefficient matrix: coefficients are the magnitudes, sorted.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 0.6;
    m(1, 1) = Complex(0.0, 0.8);
    const auto skewed = schmidt(BipartiteState(kSys, kPtr, m));
    REQUIRE(skewed.size() == 2);
    CHECK(skewed[0] == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(skewed[1] == doctest::Approx(0.6).epsilon(1e-14));

    // Product state: a single unit coefficient.
    const auto product = schmidt(
        tensor(Ket::basis_state(kSys, "psi1"), Ket::basis_state(kPtr, "1")));
    REQUIRE(product.size() == 1);
    CHECK(product[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("purity") {
    CHECK(purity(density_of(Ket::basis_state(kSys, "psi1"))) ==
          doctest::Approx(1.0).epsilon(1e-14));

    const DensityOperator mixture(kSys, Eigen::MatrixXcd::Identity(2, 2) / 2.0);
    CHECK(purity(mixture) == doctest::Approx(0.5).epsilon(1e-14));

    const Basis four{"a", "b", "c", "d"};
    const DensityOperator maximal(four, Eigen::MatrixXcd::Identity(4, 4) / 4.0);
    CHECK(purity(maximal) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("density operator validation") {
    Eigen::MatrixXcd not_hermitian(2, 2);
    not_hermitian << 0.5, Complex(0.1, 0.1), 0.3, 0.5;
    CHECK_THROWS_AS(DensityOperator(kSys, not_hermitian), DomainError);

    CHECK_THROWS_AS(DensityOperator(kSys, Eigen::MatrixXcd::Identity(2, 2)), DomainError);

    Eigen::MatrixXcd indefinite(2, 2);
    indefinite << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(DensityOperator(kSys, indefinite), DomainError);
}

TEST_CASE("unitary validation") {
    Eigen::MatrixXcd shrink = Eigen::MatrixXcd::Identity(2, 2) * 0.9;
    CHECK_THROWS_AS(UnitaryOp(kSys, shrink), DomainError);
}

TEST_CASE("property: reduced operators reproduce one-sided expectations") {
    std::mt19937_64 rng(20240817);
    const Basis basis_b{"1", "2", "3"};
    for (int trial = 0; trial < 100; ++trial) {
        const BipartiteState state = testing::random_bipartite(kSys, basis_b, rng);
        const Observable obs_a = testing::random_hermitian(kSys, rng);

        const double via_reduced = expectation(partial_trace(state, Side::A), obs_a);
        const double via_full =
            expectation(density_of(state), tensor(obs_a, Observable::identity(basis_b)));
        CHECK(std::abs(via_reduced - via_full) < kAmpTol);
    }
}

TEST_CASE("property: pure states have unit purity and phase-free densities") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    const Basis basis{"a", "b", "c"};
    for (int trial = 0; trial < 100; ++trial) {
        const Ket ket = testing::random_ket(basis, rng);
        CHECK(std::abs(purity(density_of(ket)) - 1.0) < kAmpTol);

        const Complex phase = std::polar(1.0, angle(rng));
        const Ket rotated(basis, Eigen::VectorXcd(ket.amplitudes() * phase));
        CHECK(testing::max_abs_diff(density_of(rotated).matrix(),
                                    density_of(ket).matrix()) < kAmpTol);
    }
}

TEST_CASE("property: partial trace preserves trace") {
    std::mt19937_64 rng(4242);
    const Basis basis_b{"x", "y", "z"};
    for (int trial = 0; trial < 100; ++trial) {
        const BipartiteState state = testing::random_bipartite(kSys, basis_b, rng);
        for (Side side : {Side::A, Side::B}) {
            const auto reduced = partial_trace(state, side);
            CHECK(std::abs(reduced.matrix().trace() - Complex(1.0, 0.0)) < kAmpTol);
        }
    }
}

TEST_CASE("bipartite flattening round-trips") {
    std::mt19937_64 rng(31337);
    const Basis basis_b{"1", "2", "3"};
    for (int trial = 0; trial < 20; ++trial) {
        const BipartiteState state = testing::random_bipartite(kSys, basis_b, rng);
        const BipartiteState back =
            BipartiteState::from_ket(state.to_ket(), kSys, basis_b);
        CHECK(testing::max_abs_diff(back.amplitudes(), state.amplitudes()) == 0.0);
    }
}

TEST_CASE("local unitaries act on one side only") {
    std::mt19937_64 rng(555);
    const BipartiteState state = testing::random_bipartite(kSys, kPtr, rng);
    Eigen::MatrixXcd h(2, 2);
    h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    const UnitaryOp mix(kPtr, h);

    const BipartiteState rotated = apply_local(mix, state, Side::B);
    CHECK(testing::max_abs_diff(partial_trace(rotated, Side::A).matrix(),
                                partial_trace(state, Side::A).matrix()) < kAmpTol);
    CHECK_THROWS_AS(apply_local(UnitaryOp(kPtr, h), state, Side::A), BasisMismatchError);
}
