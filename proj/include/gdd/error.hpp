#pragma once

#include <stdexcept>
#include <string>

namespace gdd {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Register size or qubit index outside the supported range.
class SizeError : public Error {
public:
    using Error::Error;
};

/// A matrix or channel failed a mathematical validity check
/// (non-unitary gate, non-trace-preserving channel, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Bad gate operands (duplicate or out-of-range targets, arity mismatch).
class OperandError : public Error {
public:
    using Error::Error;
};

/// Malformed user input (target bitstring, pulse count, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// Missing or inconsistent configuration (durations, calibration files, CLI).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Numerical drift beyond the tolerated bound; indicates a kernel bug,
/// never silently repaired.
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure, annotated with the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace gdd
