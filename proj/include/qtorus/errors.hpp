#pragma once

#include <stdexcept>
#include <string>

namespace qtorus {

// Base for every error the library throws. The CLI maps PreconditionError
// subclasses to exit status 3 and InvariantViolation to status 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class DimensionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class InvalidOrderError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class ShapeError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class InvalidParameterError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class NoRootOfUnityError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class InvalidPrimeError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class UnsupportedDomainError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class OverflowError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

// A computed result contradicted an independent check. Never expected.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

} // namespace qtorus
