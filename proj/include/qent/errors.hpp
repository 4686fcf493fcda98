#pragma once

#include <stdexcept>
#include <string>

namespace qent {

// Base of every error raised by the library. Callers that only care about
// "the input was bad" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shapes or subsystem dimensions that do not fit the operation.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Matrix expected to be Hermitian is not, beyond tolerance.
class SymmetryError : public Error {
public:
    using Error::Error;
};

// Iterative kernel hit its sweep cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Argument violates a documented precondition (range, finiteness, isometry).
class ArgumentError : public Error {
public:
    using Error::Error;
};

// Measure has no meaning for the input, e.g. negativity when d = 1.
class UndefinedMeasureError : public Error {
public:
    using Error::Error;
};

// State violates PureState / DensityMatrix invariants.
class InvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace qent
