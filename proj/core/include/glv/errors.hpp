#pragma once

#include <stdexcept>
#include <string>

namespace glv {

/// Malformed input: bad file syntax, non-positive rates, invalid field values.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was called outside its stated domain (e.g. a criticality
/// analysis on a system whose trace is not zero).
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// detC == 0: the exponent matrix is singular, so the equilibrium structure
/// degenerates (a line of equilibria or none).  Classification routines that
/// require an isolated equilibrium refuse such systems with this error.
class ZipCaseError : public PreconditionError {
public:
    explicit ZipCaseError(const std::string& what) : PreconditionError(what) {}
};

/// A numerical procedure failed: step-size underflow in the integrator,
/// an exhausted certificate search, a non-convergent root solve.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace glv
