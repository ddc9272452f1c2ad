#pragma once

#include <stdexcept>
#include <string>

namespace dyncover {

// Raised when a maintained invariant or a claimed post-condition does not
// hold. Always indicates a bug, never bad user input.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

// Raised by update operations for requests that are invalid against the
// current graph (duplicate edge, unknown id, bad cardinality).
class UpdateError : public std::invalid_argument {
public:
    explicit UpdateError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace dyncover
