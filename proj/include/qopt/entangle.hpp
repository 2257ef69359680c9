#pragma once

// The idealized which-path measurement as a linear map correlating system
// basis states with detector pointer states, plus the diagnostics that
// separate a genuine local superposition from the correlated joint state:
// product tests, reduced-operator cross-term weight, and the check that a
// subsystem actually *has* a given pure state.

#include <string>

#include "qopt/qcore.hpp"

namespace qopt {
namespace entangle {

inline const std::string kSystem1 = "psi1";
inline const std::string kSystem2 = "psi2";

struct MeasurementSetup {
    Basis system_basis{kSystem1, kSystem2};
    // First label is the idle ("ready") detector state, the remaining two
    // are the orthonormal pointer states recording outcome 1 and 2.
    Basis detector_basis{"ready", "1", "2"};
    // Relative phase between the two correlated branches of the output;
    // an ideal measurement is aligned so this is zero.
    double correlation_phase = 0.0;

    Basis pointer_basis() const { return {detector_basis.at(1), detector_basis.at(2)}; }
};

// Linear extension of the detector's calibration on basis states:
//   a |s1> + b |s2>  ->  a |s1>|p1> + b e^{i phase} |s2>|p2>.
// Norm-preserving. Output is over (system_basis, pointer_basis).
// Throws BasisMismatchError if the input ket is not over system_basis.
BipartiteState premeasure(const Ket& system, const MeasurementSetup& setup = {});

// Partial-measurement variant: the two pointer states overlap by
// <p1|p2> = overlap instead of being orthogonal. They are embedded in a
// two-mode ambient detector basis {"m1", "m2"}. overlap = 0 reproduces
// premeasure; overlap = 1 records nothing and leaves the system coherent.
BipartiteState premeasure_overlapping(const Ket& system, double overlap,
                                      const MeasurementSetup& setup = {});

// True iff the second Schmidt coefficient is below the rank cutoff.
bool is_product(const BipartiteState& state);

// True iff the kept subsystem's reduced density operator equals the
// candidate's projector entrywise within `tol` - i.e. iff that subsystem
// really is in that pure state.
bool local_pure_consistency(const BipartiteState& state, Side side,
                            const Ket& candidate, double tol = 1e-10);

// Twice the magnitude of the off-diagonal entry of a two-dimensional
// density operator: 1 for an equal-weight superposition, 0 for the
// diagonal mixture left behind by an ideal measurement.
double cross_term_weight(const DensityOperator& rho);
double cross_term_weight(const BipartiteState& state, Side side);

} // namespace entangle
} // namespace qopt
