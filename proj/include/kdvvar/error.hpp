#pragma once

#include <stdexcept>
#include <string>

namespace kdv {

/// Malformed or non-finite input (bad argument values, violated preconditions).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well formed but lies outside the mathematical domain of the
/// operation (infeasible constraint ratio, wrong regime, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request exceeds what the implementation supports (e.g. too many solitons).
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic produced an overflow or NaN.
class NonFinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two grid functions live on different grids, or a grid is too small for
/// the requested object.
class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton projection onto the constraint manifold failed.
class ProjectionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kdv
