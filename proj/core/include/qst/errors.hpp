#pragma once

#include <stdexcept>
#include <string>

namespace qst {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dimension or qubit-count mismatch between operands.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Request exceeds the supported dense-simulation size.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Invalid argument value (bad index set, out-of-range parameter, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

// A documented precondition of the operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Interaction node placed off a participant worldline, or other
// kinematic inconsistency.
class GeometryError : public Error {
public:
    using Error::Error;
};

// A declared measurement outcome has zero probability in the simulated state.
class ContradictionError : public Error {
public:
    using Error::Error;
};

// Unknown name (builtin scenario, preparation label, ...).
class LookupError : public Error {
public:
    using Error::Error;
};

// An ontic model or Gram matrix fails its consistency requirements.
class ModelError : public Error {
public:
    using Error::Error;
};

// Filesystem failure.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace qst
