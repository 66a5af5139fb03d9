#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace maxplus {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (rationals, model files, vectors).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Matrix or vector shapes do not match the operation.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A value violates an operation's domain precondition (e.g. a +inf entry
/// where only R_max is allowed, or a non-finite scalar where a finite one
/// is required).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The given node sequence is not a circuit of the graph.
class NotACircuitError : public Error {
public:
    using Error::Error;
};

/// A circuit references an arc that does not exist in the parametric graph.
class MissingArcError : public Error {
public:
    using Error::Error;
};

/// Exhaustive circuit enumeration was requested beyond the configured cap.
class InstanceTooLargeError : public Error {
public:
    using Error::Error;
};

/// Raised when an operation requires a graph without positive-weight
/// circuits but one exists.  Carries a witness: an elementary circuit
/// (0-based node indices, no repeated first node) and its exact weight.
class PositiveCircuitError : public Error {
public:
    PositiveCircuitError(std::string message, std::vector<int> nodes, mpq_class weight)
        : Error(std::move(message)), nodes_(std::move(nodes)), weight_(std::move(weight)) {}

    const std::vector<int>& nodes() const { return nodes_; }
    const mpq_class& weight() const { return weight_; }

private:
    std::vector<int> nodes_;
    mpq_class weight_;
};

/// An event-graph description violates structural or interval invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

} // namespace maxplus
