#pragma once

// Two-photon back-to-back interferometer: entangled biphoton construction,
// joint detection statistics, degree of correlation, no-signaling marginals,
// and Bell-type inequality evaluation (three-setting and CHSH forms, plus a
// brute-force deterministic local-strategy bound and grid scans).

#include <array>
#include <string>
#include <vector>

#include "qopt/qcore.hpp"

namespace qopt {
namespace nonlocal {

inline const std::string kDetA1 = "A1";
inline const std::string kDetA2 = "A2";
inline const std::string kDetB1 = "B1";
inline const std::string kDetB2 = "B2";

// Margins larger than this count as violations; smaller ones are treated
// as saturation within floating-point noise.
inline constexpr double kViolationEps = 1e-9;

struct RtoConfig {
    double phi_a = 0.0;
    double phi_b = 0.0;
};

/// Joint detection probabilities for one phase setting, with the derived
/// agreement/disagreement split and degree of correlation E.
struct CorrelationStats {
    double p11 = 0.0;
    double p12 = 0.0;
    double p21 = 0.0;
    double p22 = 0.0;
    double p_corr = 0.0; // p11 + p22
    double p_anti = 0.0; // p12 + p21
    double e = 0.0;      // p_corr - p_anti

    static CorrelationStats from_probs(double p11, double p12, double p21, double p22);
};

struct BellResult {
    std::string inequality;       // "bell1964" or "chsh"
    std::string form;             // human-readable statement incl. sign convention
    std::vector<double> settings; // the phase settings used, in radians
    double lhs = 0.0;
    double bound = 0.0;
    double margin = 0.0;     // lhs - bound
    double abs_margin = 0.0; // |lhs| - bound (equals margin when lhs >= 0)
    bool violated = false;   // margin > kViolationEps
};

// Post-beam-splitter biphoton state over detectors {A1,A2} x {B1,B2}.
//
// The source emits (|ss> + |dd>)/sqrt(2) into paired solid/dashed arms;
// side A's phase shifter sits on its solid arm and side B's on its dashed
// arm, so the two-photon branches pick up the relative phase
// phi_b - phi_a (either observer can steer the correlations, and common
// shifts drop out). Each side then mixes its arms on a local 50/50
// splitter. Detector labels are calibrated so equal settings give perfect
// correlation: B1 reads B's cross output port, mirroring the single-photon
// interferometer convention where the cross port is bright at zero phase.
BipartiteState rto_state(const RtoConfig& cfg);

// Joint probabilities from the evolved amplitudes (closed form
// p_corr = (1 + cos(phi_b - phi_a))/2 is the test oracle, not the path).
CorrelationStats joint_probs(const RtoConfig& cfg);

// Equals joint_probs(cfg).e; analytically cos(phi_b - phi_a).
double degree_of_correlation(const RtoConfig& cfg);

struct Marginals {
    std::array<double, 2> a{}; // P(A1), P(A2)
    std::array<double, 2> b{}; // P(B1), P(B2)
};

// Single-side detection probabilities; 1/2 each for every phase setting.
Marginals marginals(const RtoConfig& cfg);

// Three-setting inequality in the correlated-outcomes transcription
//   |E(a,b) - E(a,c)| <= 1 - E(b,c)
// with E(x,y) the degree of correlation at settings (x, y). The original
// anticorrelation form maps onto this by relabeling B's outcomes, since
// this source is perfectly correlated (not anticorrelated) at equal
// settings.
BellResult bell_1964(double a, double b, double c);

// Four-setting form S = E(a,b) - E(a,b2) + E(a2,b) + E(a2,b2), local bound
// 2. `margin` is S - 2; `abs_margin` is |S| - 2, the symmetric variant.
BellResult chsh(double a, double a2, double b, double b2);

// Exact maximum of the CHSH expression over all deterministic local
// strategies (each setting assigned a fixed +/-1 outcome); equal settings
// share their assignment. Always 2 for any four settings.
double deterministic_lhv_max(double a, double a2, double b, double b2);

struct BellScanRow {
    double dphi = 0.0;
    double bell1964_margin = 0.0; // ladder (0, dphi, 2 dphi)
    double chsh_margin = 0.0;     // ladder (0, 2 dphi, dphi, 3 dphi), |S| - 2
    double best_margin = 0.0;
};

// Best violation margin per phase difference under the two setting ladders.
// Margins are reported as computed; saturation shows up as ~0.
std::vector<BellScanRow> bell_scan(const std::vector<double>& dphi_grid);

struct Table1Row {
    double phase = 0.0;       // shifter phase (single photon) / phase difference (pair)
    double simple_p1 = 0.0;   // single-photon P(D1) at this phase
    double marginal_a1 = 0.5; // each photon of the pair, P(first detector)
    double marginal_b1 = 0.5;
    double p_corr = 0.0;
    double p_anti = 0.0;
    double e = 0.0;
};

struct Table1 {
    std::vector<Table1Row> rows;    // phases {0, pi/4, pi/2, 3pi/4, pi}
    std::vector<std::string> notes; // documented discrepancies vs common tabulations
};

// Five-row comparison of a single-photon superposition against the
// entangled pair: the photon's own statistics vary with phase in the first
// case, while in the second only the correlations do. All values are
// computed from the amplitude evolutions, never hard-coded.
Table1 table1();

} // namespace nonlocal
} // namespace qopt
