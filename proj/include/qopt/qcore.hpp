#pragma once

// Exact complex linear algebra over small labeled Hilbert spaces: kets,
// bipartite states, density operators, observables, tensor products,
// partial traces and Schmidt analysis. Every object carries its basis as
// an ordered list of string labels so that failures stay legible and
// subsystem ordering can never be confused silently.
//
// All types are immutable values after construction and all operations are
// pure functions; everything here is safe to use concurrently.

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "qopt/errors.hpp"

namespace qopt {

using Complex = std::complex<double>;
using Basis = std::vector<std::string>;

// Absolute tolerance on dimensionless amplitudes. Matrices here are tiny
// (dimension <= 8), so near-machine exactness is attainable.
inline constexpr double kAmpTol = 1e-12;

// Schmidt coefficients below this are reported as exactly zero, which
// separates product states from entangled ones robustly.
inline constexpr double kSchmidtCutoff = 1e-10;

// Norms below this cannot be normalized meaningfully.
inline constexpr double kZeroNormTol = 1e-14;

enum class Side { A, B };

// Throws BasisMismatchError unless the labels are nonempty and unique.
void validate_basis(const Basis& basis, const char* what);

// Index of `label` in `basis`; throws UnknownModeError if absent.
Eigen::Index basis_index(const Basis& basis, const std::string& label);

// Labels of the product space, A-major: "(a,b)" for each a then each b.
Basis product_basis(const Basis& a, const Basis& b);

/// Unit-norm state vector over a labeled basis.
class Ket {
  public:
    // Requires unit norm within kAmpTol; use normalize() to scale first.
    Ket(Basis basis, Eigen::VectorXcd amplitudes);

    static Ket basis_state(Basis basis, const std::string& label);

    const Basis& basis() const { return basis_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    Eigen::Index dim() const { return amps_.size(); }

    Complex amplitude(const std::string& label) const {
        return amps_[basis_index(basis_, label)];
    }
    double prob(const std::string& label) const {
        return std::norm(amplitude(label));
    }

  private:
    Basis basis_;
    Eigen::VectorXcd amps_;
};

/// Pure state of a composite A x B system. Amplitudes are stored as a
/// matrix indexed (A label, B label); the Frobenius norm is 1.
class BipartiteState {
  public:
    BipartiteState(Basis basis_a, Basis basis_b, Eigen::MatrixXcd amplitudes);

    const Basis& basis_a() const { return basis_a_; }
    const Basis& basis_b() const { return basis_b_; }
    const Eigen::MatrixXcd& amplitudes() const { return amps_; }

    Complex amplitude(const std::string& a, const std::string& b) const {
        return amps_(basis_index(basis_a_, a), basis_index(basis_b_, b));
    }
    double prob(const std::string& a, const std::string& b) const {
        return std::norm(amplitude(a, b));
    }

    // Flatten to a Ket over product_basis(basis_a, basis_b). Lossless.
    Ket to_ket() const;
    static BipartiteState from_ket(const Ket& ket, Basis basis_a, Basis basis_b);

  private:
    Basis basis_a_;
    Basis basis_b_;
    Eigen::MatrixXcd amps_;
};

/// Hermitian, unit-trace, positive-semidefinite operator over a labeled
/// basis. Positivity is validated at construction with a symmetric
/// eigensolver (dimensions are <= 8, so this is cheap).
class DensityOperator {
  public:
    DensityOperator(Basis basis, Eigen::MatrixXcd matrix);

    const Basis& basis() const { return basis_; }
    const Eigen::MatrixXcd& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

    Complex entry(const std::string& row, const std::string& col) const {
        return mat_(basis_index(basis_, row), basis_index(basis_, col));
    }

  private:
    Basis basis_;
    Eigen::MatrixXcd mat_;
};

/// Hermitian operator over a labeled basis.
class Observable {
  public:
    Observable(Basis basis, Eigen::MatrixXcd matrix);

    static Observable identity(Basis basis);
    // Projector |k><k| onto a unit ket.
    static Observable projector(const Ket& ket);

    const Basis& basis() const { return basis_; }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

  private:
    Basis basis_;
    Eigen::MatrixXcd mat_;
};

/// Unitary map over a labeled mode basis, validated to ||U'U - I||inf < kAmpTol.
class UnitaryOp {
  public:
    UnitaryOp(Basis basis, Eigen::MatrixXcd matrix);

    const Basis& basis() const { return basis_; }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

  private:
    Basis basis_;
    Eigen::MatrixXcd mat_;
};

// v / ||v||. Throws ZeroVectorError when ||v|| < kZeroNormTol.
Ket normalize(Basis basis, const Eigen::VectorXcd& v);
Ket normalize(Basis basis, const std::vector<Complex>& v);

// Product state a (x) b: amplitudes[(i,j)] = a[i] * b[j]. Schmidt rank 1.
BipartiteState tensor(const Ket& a, const Ket& b);

// Projection operator |k><k| as a density operator.
DensityOperator density_of(const Ket& ket);
DensityOperator density_of(const BipartiteState& state);

// Tr(rho O). Bases must match. The imaginary residue must be below kAmpTol
// (guaranteed for validated inputs) and is discarded.
double expectation(const DensityOperator& rho, const Observable& obs);

// Reduced density operator of the kept subsystem.
DensityOperator partial_trace(const BipartiteState& state, Side keep);
// Same, for an operator over product_basis(basis_a, basis_b). Throws
// NotProductBasisError if rho's basis is not exactly that product.
DensityOperator partial_trace(const DensityOperator& rho, const Basis& basis_a,
                              const Basis& basis_b, Side keep);

// Schmidt coefficients (singular values of the amplitude matrix),
// nonincreasing, entries below kSchmidtCutoff reported as zero.
std::vector<double> schmidt(const BipartiteState& state);

// Tr(rho^2), in [1/dim, 1]; 1 exactly for pure states.
double purity(const DensityOperator& rho);

// O_a (x) O_b over the product basis.
Observable tensor(const Observable& a, const Observable& b);

// U |k>.
Ket apply(const UnitaryOp& u, const Ket& ket);
// (U (x) I) or (I (x) U) applied to one subsystem.
BipartiteState apply_local(const UnitaryOp& u, const BipartiteState& state, Side side);

} // namespace qopt
