#pragma once

#include <stdexcept>
#include <string>

namespace qopt {

// Normalization target with no usable magnitude.
struct ZeroVectorError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Two labeled objects were combined but their bases differ.
struct BasisMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A partial trace was requested on an operator whose basis is not the
// expected product of the two subsystem bases.
struct NotProductBasisError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnknownModeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptyTallyError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// CLI / experiment-runner errors.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownExperimentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qopt
