// errors.hpp - exception types raised by the ofs library

#pragma once

#include <stdexcept>
#include <string>

namespace ofs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonHermitianInput : Error {
    using Error::Error;
};

struct NonUnitaryInput : Error {
    using Error::Error;
};

struct InvalidState : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// Raised only when a susceptibility evaluates to NaN/Inf; near-degenerate
// gaps are handled through the analytic limit.
struct DegenerateGap : Error {
    using Error::Error;
};

// StateWeights whose basis does not diagonalize H(lambda), i.e. [rho, H] != 0.
struct WeightsNotInEigenbasis : Error {
    using Error::Error;
};

struct QuadratureNonConverged : Error {
    using Error::Error;
};

struct DimensionTooLarge : Error {
    using Error::Error;
};

struct DegenerateGroundState : Error {
    using Error::Error;
};

} // namespace ofs
