#pragma once

// Beam splitters, phase shifters and mirrors as labeled unitaries, the
// assembled two-arm interferometer built from them, a two-path screen
// intensity model, and the randomly-switched output-splitter experiment.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qopt/qcore.hpp"

namespace qopt {
namespace optics {

inline const std::string kPath1 = "path1";
inline const std::string kPath2 = "path2";
inline const std::string kDetector1 = "D1";
inline const std::string kDetector2 = "D2";

// Symmetric 50/50 convention: transmission 1/sqrt(2), reflection i/sqrt(2).
UnitaryOp beam_splitter(const std::string& mode1 = kPath1,
                        const std::string& mode2 = kPath2);

// Multiplies the amplitude on `mode` by e^{i phi}; identity elsewhere.
// Throws UnknownModeError if `mode` is not in `modes`.
UnitaryOp phase_shifter(const Basis& modes, const std::string& mode, double phi);

// Mirrors only fold the geometry; their fixed reflection phase is absorbed
// into the interferometer calibration, so the map is the identity.
UnitaryOp mirror(const Basis& modes, const std::string& mode);

struct OpticalElement {
    enum class Kind { BeamSplitter, PhaseShifter, Mirror };

    Kind kind = Kind::Mirror;
    std::vector<std::string> acts_on; // one mode (shifter, mirror) or two (splitter)
    double phase = 0.0;               // phase shifters only

    static OpticalElement make_beam_splitter(std::string mode1, std::string mode2);
    static OpticalElement make_phase_shifter(std::string mode, double phi);
    static OpticalElement make_mirror(std::string mode);

    // The element's action embedded in the given mode space.
    UnitaryOp unitary(const Basis& modes) const;
};

struct MziConfig {
    double phi1 = 0.0;
    double phi2 = 0.0;
    bool bs2_present = true;
};

struct DetectorProbs {
    double d1 = 0.0;
    double d2 = 0.0;
};

// Single-photon detection probabilities, computed by evolving a two-mode
// ket through BS1, the arm phase shifters and (optionally) BS2.
//
// Calibration: detector D1 sits on the cross output port, so phi1 = phi2
// sends all light to D1; the closed form is P(D1) = (1 + cos(phi1-phi2))/2.
// Without BS2 each arm runs straight to the detector facing it and the
// split at BS1 fixes P(D1) = P(D2) = 1/2 whatever the phases.
DetectorProbs mzi_probabilities(const MziConfig& cfg);

// Two-path screen intensity I(x) = G(x) [1 + v cos(2 pi x / period)] with a
// Gaussian envelope G of the given width. v = 1 gives full fringes, v = 0
// the fringe-free sum of the two one-slit patterns.
std::vector<double> screen_pattern(const std::vector<double>& x_grid,
                                   double envelope_width, double fringe_period,
                                   double visibility);

struct DetectorTally {
    std::uint64_t d1 = 0;
    std::uint64_t d2 = 0;
    std::uint64_t total() const { return d1 + d2; }
};

struct DelayedChoiceResult {
    DetectorTally with_bs2;    // trials where the output splitter was in
    DetectorTally without_bs2; // trials where it was out
};

// Per trial the output splitter is inserted or removed on a fair coin drawn
// from the seeded generator, then the detector click is sampled from the
// corresponding single-photon probabilities (phi1 = phi, phi2 = 0).
// Bit-identical for equal seeds.
DelayedChoiceResult delayed_choice(std::uint64_t trials, double phi, std::uint64_t seed);

} // namespace optics
} // namespace qopt
