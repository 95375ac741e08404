/// @file errors.hpp
/// @brief Exception hierarchy shared by all phasewig modules.
///
/// Two families matter for the CLI exit-code contract: ValidationError
/// (bad inputs, exit 1) and NumericalGateError (a computation tripped a
/// numerical sanity gate, exit 2).
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phasewig {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: invalid grid specs, shape mismatches, config problems.
class ValidationError : public Error {
public:
    using Error::Error;
};

class InvalidSpecError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ShapeMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class PathOutOfDomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DegreeOverflowError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonConfiningPotentialError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Expression-language parse failure; carries the byte offset of the
/// first offending character.
class SyntaxError : public ValidationError {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : ValidationError(what + " (byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class UnknownIdentifierError : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

/// A computation violated a numerical gate (leakage, realness, ...).
class NumericalGateError : public Error {
public:
    using Error::Error;
};

class BoundaryLeakageError : public NumericalGateError {
public:
    using NumericalGateError::NumericalGateError;
};

class RealnessError : public NumericalGateError {
public:
    using NumericalGateError::NumericalGateError;
};

class NotClosedError : public NumericalGateError {
public:
    using NumericalGateError::NumericalGateError;
};

/// Expression evaluated to NaN/Inf somewhere on the grid.
class EvalDomainError : public NumericalGateError {
public:
    using NumericalGateError::NumericalGateError;
};

}  // namespace phasewig
