#pragma once

#include <stdexcept>
#include <string>

namespace sigpath {

// Precondition or domain violation (bad dimension, depth out of range, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed textual input: JSON files, word strings.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two independent routes to the same answer disagreed. Always a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An iterative routine failed to converge or a value left the representable range.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sigpath
