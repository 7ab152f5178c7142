#pragma once

#include <stdexcept>
#include <string>

namespace cavq {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter set or argument violates a documented precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A Fock-space truncation is too small for the requested state.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// The requested measurement branch has (numerically) zero probability.
class DegenerateBranchError : public Error {
public:
    using Error::Error;
};

/// A time integrator drifted outside its stability guards.
class InstabilityError : public Error {
public:
    using Error::Error;
};

/// Quadrature did not converge when the node spacing was halved.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

class NonIdentifiableError : public Error {
public:
    using Error::Error;
};

class BracketError : public Error {
public:
    using Error::Error;
};

/// Configuration-file problem; carries the offending line when known.
class ConfigError : public Error {
public:
    ConfigError(const std::string& msg, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace cavq
