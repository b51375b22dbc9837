#pragma once

#include <stdexcept>
#include <string>

namespace lllshift {

/// Raised when an operation is called outside its precondition (mixed groups,
/// supports escaping a window, out-of-range arguments).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when textual input (elements, patterns, instance or coloring files)
/// cannot be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a parameter search has no feasible answer or an instance is
/// structurally invalid for certification (e.g. a weight p(S) >= 1).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a finite LLL instance is malformed (p(S) outside [0, 1), a
/// bad pattern whose domain differs from its support, a missing weight).
class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace lllshift
