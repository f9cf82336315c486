#pragma once

#include <stdexcept>
#include <string>

namespace qnormal {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failures (CLI exit code 3).
struct NumericalError : Error {
    using Error::Error;
};

struct NonConvergence : NumericalError {
    using NumericalError::NumericalError;
};

// The diagonalizability assumption is violated: kappa(P) exceeded the cap
// or the eigenvector matrix is numerically singular.
struct NonDiagonalizable : NumericalError {
    using NumericalError::NumericalError;
};

struct Singular : NumericalError {
    using NumericalError::NumericalError;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct ZeroVector : NumericalError {
    using NumericalError::NumericalError;
};

struct StepSizeTooLarge : NumericalError {
    using NumericalError::NumericalError;
};

struct ProjectionZero : NumericalError {
    using NumericalError::NumericalError;
};

struct GridTooCoarse : Error {
    using Error::Error;
};

struct SpecInfeasible : Error {
    using Error::Error;
};

// Configuration failures (CLI exit code 2).
struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

}  // namespace qnormal
