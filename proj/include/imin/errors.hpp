#ifndef IMIN_ERRORS_HPP
#define IMIN_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace imin {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Instance violates a construction invariant (bad ids, powers, positions, gains).
class InvalidInstanceError : public Error {
public:
    using Error::Error;
};

/// phi_u(u, xi) is deliberately undefined.
class SelfSignalError : public Error {
public:
    using Error::Error;
};

/// Transmission power outside [0, xi_max].
class PowerRangeError : public Error {
public:
    using Error::Error;
};

/// No feasible power lets `from` reach `to` at the acceptance threshold.
class UnreachableError : public Error {
public:
    UnreachableError(int from, int to, const std::string& what)
        : Error(what), from(from), to(to) {}
    int from;
    int to;
};

/// Simplex exceeded the pivot cap or met an internal inconsistency.
class SolverFailureError : public Error {
public:
    using Error::Error;
};

/// Some S1 elements are not covered by any set.
class UncoverableError : public Error {
public:
    UncoverableError(std::vector<int> elements, const std::string& what)
        : Error(what), elements(std::move(elements)) {}
    std::vector<int> elements;
};

/// Initial estimator value >= 1: the rounding preconditions do not hold.
class DerandomizationError : public Error {
public:
    using Error::Error;
};

/// The feasibility graph cannot be made connected; carries its components.
class DisconnectedError : public Error {
public:
    DisconnectedError(std::vector<std::vector<int>> components, const std::string& what)
        : Error(what), components(std::move(components)) {}
    std::vector<std::vector<int>> components;
};

/// Exhaustive enumeration refused: edge count exceeds the limit.
class TooLargeError : public Error {
public:
    using Error::Error;
};

/// Generator guard (e.g. exponential chain long enough to overflow doubles).
class GeneratorRangeError : public Error {
public:
    using Error::Error;
};

/// A state that the algorithm's own theory rules out; indicates a bug.
class InternalInvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace imin

#endif
