#include "qopt/entangle.hpp"

#include <cmath>
#include <utility>

namespace qopt {
namespace entangle {

namespace {

void check_setup(const MeasurementSetup& setup) {
    if (setup.system_basis.size() != 2) {
        throw DimensionError("MeasurementSetup: system basis must have two states");
    }
    if (setup.detector_basis.size() != 3) {
        throw DimensionError("MeasurementSetup: detector basis must be {ready, p1, p2}");
    }
    validate_basis(setup.system_basis, "MeasurementSetup system");
    validate_basis(setup.detector_basis, "MeasurementSetup detector");
}

} // namespace

BipartiteState premeasure(const Ket& system, const MeasurementSetup& setup) {
    check_setup(setup);
    if (system.basis() != setup.system_basis) {
        throw BasisMismatchError("premeasure: system ket is not over the setup's system basis");
    }
    const Complex a = system.amplitudes()[0];
    const Complex b = system.amplitudes()[1];

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b * std::polar(1.0, setup.correlation_phase);
    return BipartiteState(setup.system_basis, setup.pointer_basis(), std::move(m));
}

BipartiteState premeasure_overlapping(const Ket& system, double overlap,
                                      const MeasurementSetup& setup) {
    check_setup(setup);
    if (system.basis() != setup.system_basis) {
        throw BasisMismatchError("premeasure: system ket is not over the setup's system basis");
    }
    if (overlap < -1.0 || overlap > 1.0) {
        throw DomainError("premeasure_overlapping: overlap outside [-1, 1]");
    }
    const Complex a = system.amplitudes()[0];
    const Complex b = system.amplitudes()[1] * std::polar(1.0, setup.correlation_phase);

    // Pointer states in the ambient detector modes: p1 = (1, 0),
    // p2 = (overlap, sqrt(1 - overlap^2)).
    const double ortho = std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
    Eigen::MatrixXcd m(2, 2);
    m(0, 0) = a;
    m(0, 1) = 0.0;
    m(1, 0) = b * overlap;
    m(1, 1) = b * ortho;
    return BipartiteState(setup.system_basis, Basis{"m1", "m2"}, std::move(m));
}

bool is_product(const BipartiteState& state) {
    const std::vector<double> coeffs = schmidt(state);
    return coeffs.size() < 2 || coeffs[1] < kSchmidtCutoff;
}

bool local_pure_consistency(const BipartiteState& state, Side side,
                            const Ket& candidate, double tol) {
    const DensityOperator reduced = partial_trace(state, side);
    if (reduced.basis() != candidate.basis()) {
        throw BasisMismatchError(
            "local_pure_consistency: candidate basis differs from the subsystem basis");
    }
    const Eigen::MatrixXcd projector =
        candidate.amplitudes() * candidate.amplitudes().adjoint();
    return (reduced.matrix() - projector).cwiseAbs().maxCoeff() < tol;
}

double cross_term_weight(const DensityOperator& rho) {
    if (rho.dim() != 2) {
        throw DimensionError("cross_term_weight: density operator must be two-dimensional");
    }
    return 2.0 * std::abs(rho.matrix()(0, 1));
}

double cross_term_weight(const BipartiteState& state, Side side) {
    return cross_term_weight(partial_trace(state, side));
}

} // namespace entangle
} // namespace qopt
