#pragma once

#include <stdexcept>
#include <string>

namespace gnflow {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two fields that must share a grid do not.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// A map whose discrete derivative is not strictly positive.
class NonMonotoneMap : public Error {
public:
    using Error::Error;
};

/// Cyclic tridiagonal factorization met a nonpositive pivot.
class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

/// Input data violating a precondition (e.g. min h0 <= 0), rejected at construction.
class InvalidDatum : public Error {
public:
    using Error::Error;
};

/// min h <= 0 reached by the Eulerian time stepper.
class DepthPositivityLost : public Error {
public:
    DepthPositivityLost(const std::string& what, double time)
        : Error(what), t(time) {}
    double t;
};

/// min phi_x <= 0 reached by the Lagrangian time stepper.
class DiffeoLost : public Error {
public:
    DiffeoLost(const std::string& what, double time)
        : Error(what), t(time) {}
    double t;
};

/// The solution reached the guard band near the periodic domain edges.
class HorizonExceeded : public Error {
public:
    HorizonExceeded(const std::string& what, double time)
        : Error(what), t(time) {}
    double t;
};

}  // namespace gnflow
