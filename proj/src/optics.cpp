#include "qopt/optics.hpp"

#include <cmath>
#include <utility>

#include "qopt/rng.hpp"

namespace qopt {
namespace optics {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490393;
} // namespace

UnitaryOp beam_splitter(const std::string& mode1, const std::string& mode2) {
    Eigen::MatrixXcd u(2, 2);
    u(0, 0) = kInvSqrt2;
    u(0, 1) = Complex(0.0, kInvSqrt2);
    u(1, 0) = Complex(0.0, kInvSqrt2);
    u(1, 1) = kInvSqrt2;
    return UnitaryOp(Basis{mode1, mode2}, std::move(u));
}

UnitaryOp phase_shifter(const Basis& modes, const std::string& mode, double phi) {
    const auto n = static_cast<Eigen::Index>(modes.size());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
    u(basis_index(modes, mode), basis_index(modes, mode)) = std::polar(1.0, phi);
    return UnitaryOp(modes, std::move(u));
}

UnitaryOp mirror(const Basis& modes, const std::string& mode) {
    basis_index(modes, mode); // mode must exist
    const auto n = static_cast<Eigen::Index>(modes.size());
    return UnitaryOp(modes, Eigen::MatrixXcd::Identity(n, n));
}

OpticalElement OpticalElement::make_beam_splitter(std::string mode1, std::string mode2) {
    OpticalElement e;
    e.kind = Kind::BeamSplitter;
    e.acts_on = {std::move(mode1), std::move(mode2)};
    return e;
}

OpticalElement OpticalElement::make_phase_shifter(std::string mode, double phi) {
    OpticalElement e;
    e.kind = Kind::PhaseShifter;
    e.acts_on = {std::move(mode)};
    e.phase = phi;
    return e;
}

OpticalElement OpticalElement::make_mirror(std::string mode) {
    OpticalElement e;
    e.kind = Kind::Mirror;
    e.acts_on = {std::move(mode)};
    return e;
}

UnitaryOp OpticalElement::unitary(const Basis& modes) const {
    switch (kind) {
    case Kind::BeamSplitter: {
        const auto i = basis_index(modes, acts_on.at(0));
        const auto j = basis_index(modes, acts_on.at(1));
        const auto n = static_cast<Eigen::Index>(modes.size());
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
        u(i, i) = kInvSqrt2;
        u(i, j) = Complex(0.0, kInvSqrt2);
        u(j, i) = Complex(0.0, kInvSqrt2);
        u(j, j) = kInvSqrt2;
        return UnitaryOp(modes, std::move(u));
    }
    case Kind::PhaseShifter:
        return phase_shifter(modes, acts_on.at(0), phase);
    case Kind::Mirror:
        return mirror(modes, acts_on.at(0));
    }
    throw DomainError("OpticalElement: unknown kind");
}

DetectorProbs mzi_probabilities(const MziConfig& cfg) {
    const Basis arms{kPath1, kPath2};
    Ket photon = Ket::basis_state(arms, kPath1); // enters at BS1's first port

    photon = apply(beam_splitter(kPath1, kPath2), photon);
    photon = apply(phase_shifter(arms, kPath1, cfg.phi1), photon);
    photon = apply(phase_shifter(arms, kPath2, cfg.phi2), photon);
    if (cfg.bs2_present) {
        photon = apply(beam_splitter(kPath1, kPath2), photon);
    }

    // D1 reads the port in line with arm 2 (the cross port when BS2 is in),
    // D2 the port in line with arm 1.
    return DetectorProbs{photon.prob(kPath2), photon.prob(kPath1)};
}

std::vector<double> screen_pattern(const std::vector<double>& x_grid,
                                   double envelope_width, double fringe_period,
                                   double visibility) {
    if (visibility < 0.0 || visibility > 1.0) {
        throw DomainError("screen_pattern: visibility outside [0, 1]");
    }
    if (!(envelope_width > 0.0)) {
        throw DomainError("screen_pattern: envelope width must be positive");
    }
    std::vector<double> intensity;
    intensity.reserve(x_grid.size());
    for (double x : x_grid) {
        const double envelope = std::exp(-x * x / (2.0 * envelope_width * envelope_width));
        intensity.push_back(envelope *
                            (1.0 + visibility * std::cos(2.0 * kPi * x / fringe_period)));
    }
    return intensity;
}

DelayedChoiceResult delayed_choice(std::uint64_t trials, double phi, std::uint64_t seed) {
    const CounterRng switch_rng = CounterRng::stream(seed, 0);
    const CounterRng click_rng = CounterRng::stream(seed, 1);

    const DetectorProbs with = mzi_probabilities(MziConfig{phi, 0.0, true});
    const DetectorProbs without = mzi_probabilities(MziConfig{phi, 0.0, false});

    DelayedChoiceResult result;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const bool bs2_in = switch_rng.coin(i);
        const DetectorProbs& probs = bs2_in ? with : without;
        DetectorTally& tally = bs2_in ? result.with_bs2 : result.without_bs2;
        if (click_rng.uniform(i) < probs.d1) {
            ++tally.d1;
        } else {
            ++tally.d2;
        }
    }
    return result;
}

} // namespace optics
} // namespace qopt
