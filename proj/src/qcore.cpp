#include "qopt/qcore.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

namespace qopt {

namespace {

bool hermitian_within(const Eigen::MatrixXcd& m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
}

void validate_square(const Eigen::MatrixXcd& m, const Basis& basis, const char* what) {
    if (m.rows() != m.cols() || m.rows() != static_cast<Eigen::Index>(basis.size())) {
        throw DimensionError(std::string(what) + ": matrix shape does not match basis size");
    }
}

} // namespace

void validate_basis(const Basis& basis, const char* what) {
    if (basis.empty()) {
        throw BasisMismatchError(std::string(what) + ": empty basis");
    }
    std::unordered_set<std::string> seen;
    for (const auto& label : basis) {
        if (!seen.insert(label).second) {
            throw BasisMismatchError(std::string(what) + ": duplicate basis label '" + label + "'");
        }
    }
}

Eigen::Index basis_index(const Basis& basis, const std::string& label) {
    auto it = std::find(basis.begin(), basis.end(), label);
    if (it == basis.end()) {
        throw UnknownModeError("label '" + label + "' not in basis");
    }
    return static_cast<Eigen::Index>(it - basis.begin());
}

Basis product_basis(const Basis& a, const Basis& b) {
    Basis out;
    out.reserve(a.size() * b.size());
    for (const auto& la : a) {
        for (const auto& lb : b) {
            out.push_back("(" + la + "," + lb + ")");
        }
    }
    return out;
}

Ket::Ket(Basis basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
    validate_basis(basis_, "Ket");
    if (amps_.size() != static_cast<Eigen::Index>(basis_.size())) {
        throw DimensionError("Ket: amplitude count does not match basis size");
    }
    if (std::abs(amps_.norm() - 1.0) > kAmpTol) {
        throw DomainError("Ket: amplitudes are not unit-norm; construct via normalize()");
    }
}

Ket Ket::basis_state(Basis basis, const std::string& label) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
    v[basis_index(basis, label)] = 1.0;
    return Ket(std::move(basis), std::move(v));
}

BipartiteState::BipartiteState(Basis basis_a, Basis basis_b, Eigen::MatrixXcd amplitudes)
    : basis_a_(std::move(basis_a)), basis_b_(std::move(basis_b)), amps_(std::move(amplitudes)) {
    validate_basis(basis_a_, "BipartiteState (A)");
    validate_basis(basis_b_, "BipartiteState (B)");
    if (amps_.rows() != static_cast<Eigen::Index>(basis_a_.size()) ||
        amps_.cols() != static_cast<Eigen::Index>(basis_b_.size())) {
        throw DimensionError("BipartiteState: amplitude matrix shape does not match bases");
    }
    if (std::abs(amps_.norm() - 1.0) > kAmpTol) {
        throw DomainError("BipartiteState: amplitudes are not unit Frobenius norm");
    }
}

Ket BipartiteState::to_ket() const {
    const auto dim_b = amps_.cols();
    Eigen::VectorXcd flat(amps_.size());
    for (Eigen::Index i = 0; i < amps_.rows(); ++i) {
        for (Eigen::Index j = 0; j < dim_b; ++j) {
            flat[i * dim_b + j] = amps_(i, j);
        }
    }
    return Ket(product_basis(basis_a_, basis_b_), std::move(flat));
}

BipartiteState BipartiteState::from_ket(const Ket& ket, Basis basis_a, Basis basis_b) {
    if (ket.basis() != product_basis(basis_a, basis_b)) {
        throw NotProductBasisError("from_ket: ket basis is not the product of the given bases");
    }
    const auto dim_a = static_cast<Eigen::Index>(basis_a.size());
    const auto dim_b = static_cast<Eigen::Index>(basis_b.size());
    Eigen::MatrixXcd m(dim_a, dim_b);
    for (Eigen::Index i = 0; i < dim_a; ++i) {
        for (Eigen::Index j = 0; j < dim_b; ++j) {
            m(i, j) = ket.amplitudes()[i * dim_b + j];
        }
    }
    return BipartiteState(std::move(basis_a), std::move(basis_b), std::move(m));
}

DensityOperator::DensityOperator(Basis basis, Eigen::MatrixXcd matrix)
    : basis_(std::move(basis)), mat_(std::move(matrix)) {
    validate_basis(basis_, "DensityOperator");
    validate_square(mat_, basis_, "DensityOperator");
    if (!hermitian_within(mat_, kAmpTol)) {
        throw DomainError("DensityOperator: matrix is not Hermitian");
    }
    if (std::abs(mat_.trace() - Complex(1.0, 0.0)) > kAmpTol) {
        throw DomainError("DensityOperator: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        Eigen::MatrixXcd((mat_ + mat_.adjoint()) / 2.0));
    if (solver.eigenvalues().minCoeff() < -kAmpTol) {
        throw DomainError("DensityOperator: negative eigenvalue");
    }
}

Observable::Observable(Basis basis, Eigen::MatrixXcd matrix)
    : basis_(std::move(basis)), mat_(std::move(matrix)) {
    validate_basis(basis_, "Observable");
    validate_square(mat_, basis_, "Observable");
    if (!hermitian_within(mat_, kAmpTol)) {
        throw DomainError("Observable: matrix is not Hermitian");
    }
}

Observable Observable::identity(Basis basis) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    return Observable(std::move(basis), Eigen::MatrixXcd::Identity(n, n));
}

Observable Observable::projector(const Ket& ket) {
    return Observable(ket.basis(), ket.amplitudes() * ket.amplitudes().adjoint());
}

UnitaryOp::UnitaryOp(Basis basis, Eigen::MatrixXcd matrix)
    : basis_(std::move(basis)), mat_(std::move(matrix)) {
    validate_basis(basis_, "UnitaryOp");
    validate_square(mat_, basis_, "UnitaryOp");
    const auto n = mat_.rows();
    const double defect =
        (mat_.adjoint() * mat_ - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect >= kAmpTol) {
        throw DomainError("UnitaryOp: matrix is not unitary");
    }
}

Ket normalize(Basis basis, const Eigen::VectorXcd& v) {
    const double norm = v.norm();
    if (norm < kZeroNormTol) {
        throw ZeroVectorError("normalize: zero vector");
    }
    return Ket(std::move(basis), v / norm);
}

Ket normalize(Basis basis, const std::vector<Complex>& v) {
    Eigen::VectorXcd vec(static_cast<Eigen::Index>(v.size()));
    for (Eigen::Index i = 0; i < vec.size(); ++i) {
        vec[i] = v[static_cast<std::size_t>(i)];
    }
    return normalize(std::move(basis), vec);
}

BipartiteState tensor(const Ket& a, const Ket& b) {
    return BipartiteState(a.basis(), b.basis(),
                          a.amplitudes() * b.amplitudes().transpose());
}

DensityOperator density_of(const Ket& ket) {
    return DensityOperator(ket.basis(), ket.amplitudes() * ket.amplitudes().adjoint());
}

DensityOperator density_of(const BipartiteState& state) {
    return density_of(state.to_ket());
}

double expectation(const DensityOperator& rho, const Observable& obs) {
    if (rho.basis() != obs.basis()) {
        throw BasisMismatchError("expectation: density operator and observable bases differ");
    }
    const Complex value = (rho.matrix() * obs.matrix()).trace();
    if (std::abs(value.imag()) >= kAmpTol) {
        throw DomainError("expectation: imaginary residue exceeds tolerance");
    }
    return value.real();
}

DensityOperator partial_trace(const BipartiteState& state, Side keep) {
    const Eigen::MatrixXcd& m = state.amplitudes();
    if (keep == Side::A) {
        // rho_A[i,i'] = sum_j m(i,j) conj(m(i',j))
        return DensityOperator(state.basis_a(), m * m.adjoint());
    }
    // rho_B[j,j'] = sum_i m(i,j) conj(m(i,j'))
    return DensityOperator(state.basis_b(), (m.adjoint() * m).transpose());
}

DensityOperator partial_trace(const DensityOperator& rho, const Basis& basis_a,
                              const Basis& basis_b, Side keep) {
    if (rho.basis() != product_basis(basis_a, basis_b)) {
        throw NotProductBasisError(
            "partial_trace: operator basis is not the product of the given bases");
    }
    const auto dim_a = static_cast<Eigen::Index>(basis_a.size());
    const auto dim_b = static_cast<Eigen::Index>(basis_b.size());
    const Eigen::MatrixXcd& m = rho.matrix();
    if (keep == Side::A) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_a, dim_a);
        for (Eigen::Index i = 0; i < dim_a; ++i) {
            for (Eigen::Index k = 0; k < dim_a; ++k) {
                for (Eigen::Index j = 0; j < dim_b; ++j) {
                    out(i, k) += m(i * dim_b + j, k * dim_b + j);
                }
            }
        }
        return DensityOperator(basis_a, std::move(out));
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_b, dim_b);
    for (Eigen::Index j = 0; j < dim_b; ++j) {
        for (Eigen::Index l = 0; l < dim_b; ++l) {
            for (Eigen::Index i = 0; i < dim_a; ++i) {
                out(j, l) += m(i * dim_b + j, i * dim_b + l);
            }
        }
    }
    return DensityOperator(basis_b, std::move(out));
}

std::vector<double> schmidt(const BipartiteState& state) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(state.amplitudes());
    const auto& sv = svd.singularValues();
    std::vector<double> out(static_cast<std::size_t>(sv.size()));
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        out[static_cast<std::size_t>(i)] = sv[i] < kSchmidtCutoff ? 0.0 : sv[i];
    }
    while (out.size() > 1 && out.back() == 0.0) {
        out.pop_back();
    }
    return out;
}

double purity(const DensityOperator& rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

Observable tensor(const Observable& a, const Observable& b) {
    const auto dim_a = a.matrix().rows();
    const auto dim_b = b.matrix().rows();
    Eigen::MatrixXcd out(dim_a * dim_b, dim_a * dim_b);
    for (Eigen::Index i = 0; i < dim_a; ++i) {
        for (Eigen::Index k = 0; k < dim_a; ++k) {
            out.block(i * dim_b, k * dim_b, dim_b, dim_b) = a.matrix()(i, k) * b.matrix();
        }
    }
    return Observable(product_basis(a.basis(), b.basis()), std::move(out));
}

Ket apply(const UnitaryOp& u, const Ket& ket) {
    if (u.basis() != ket.basis()) {
        throw BasisMismatchError("apply: unitary and ket bases differ");
    }
    return Ket(ket.basis(), u.matrix() * ket.amplitudes());
}

BipartiteState apply_local(const UnitaryOp& u, const BipartiteState& state, Side side) {
    if (side == Side::A) {
        if (u.basis() != state.basis_a()) {
            throw BasisMismatchError("apply_local: unitary basis differs from subsystem A");
        }
        return BipartiteState(state.basis_a(), state.basis_b(),
                              u.matrix() * state.amplitudes());
    }
    if (u.basis() != state.basis_b()) {
        throw BasisMismatchError("apply_local: unitary basis differs from subsystem B");
    }
    return BipartiteState(state.basis_a(), state.basis_b(),
                          state.amplitudes() * u.matrix().transpose());
}

} // namespace qopt
