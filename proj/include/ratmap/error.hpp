#pragma once

#include <stdexcept>
#include <string>

namespace ratmap {

/// Thrown when a caller violates an operation's precondition
/// (nonpositive x, parameters outside the required regime, ...).
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a computation that is mathematically guaranteed to succeed
/// fails numerically (wrong root count, unpaired cycle root, ...).
class numeric_failure : public std::runtime_error {
public:
    explicit numeric_failure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ratmap
