#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbody {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument or invariant violation on input.
class DomainError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

/// Raised when two interacting bodies come within the guard radius.
class CollisionError : public Error {
public:
    CollisionError(double t, std::size_t i, std::size_t j, double distance)
        : Error("collision between bodies " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                " at t = " + std::to_string(t) + " (distance " + std::to_string(distance) + ")"),
          time(t), first(i), second(j), distance(distance) {}

    double time;
    std::size_t first;
    std::size_t second;
    double distance;
};

class StepUnderflowError : public Error {
public:
    StepUnderflowError(double t, double h)
        : Error("step size underflow at t = " + std::to_string(t) + " (h = " + std::to_string(h) + ")"),
          time(t), step(h) {}

    double time;
    double step;
};

class OutOfSpanError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class SingularJacobianError : public Error {
public:
    using Error::Error;
};

/// Sampling grid incompatible with the requested operation.
class GridError : public Error {
public:
    using Error::Error;
};

/// A state that should lie in Fix(R) does not.
class NotFixedError : public Error {
public:
    NotFixedError(const std::string& what, double residual) : Error(what), residual(residual) {}
    double residual;
};

}  // namespace rbody
