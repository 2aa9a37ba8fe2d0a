#pragma once

#include <stdexcept>
#include <string>

namespace glmkit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad shapes, out-of-domain responses, inconsistent configuration.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// Loss/penalty/constraint combination the solver cannot handle.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

// Objective became non-finite at an accepted iterate.
class DivergenceError : public Error {
public:
    using Error::Error;
};

// Intercept-only problem has no finite minimizer (e.g. logistic with a
// single class).
class UnboundedError : public Error {
public:
    using Error::Error;
};

// Linear-equality constraint has no feasible point.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace glmkit
