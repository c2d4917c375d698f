#pragma once

#include <stdexcept>
#include <string>

namespace curvelab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Coordinates that do not describe a point of the space, or parameters
// outside the legal range of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InputError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    SolverError(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class SamplingError : public Error {
public:
    using Error::Error;
};

// No comparison triangle with the requested side lengths exists in the model surface.
class ExistenceError : public Error {
public:
    using Error::Error;
};

// Busemann sequence that decreases along the schedule: the ray and the metric disagree.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class NonConvergenceError : public Error {
public:
    using Error::Error;
};

class NotALineError : public Error {
public:
    using Error::Error;
};

class UnboundedError : public Error {
public:
    using Error::Error;
};

}  // namespace curvelab
