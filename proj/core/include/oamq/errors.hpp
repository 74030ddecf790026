#pragma once

#include <stdexcept>
#include <string>

namespace oamq {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physically meaningless request: non-positive energy, zero field where a
/// field is required, a negative mode index.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Polynomial degree or factorial outside the supported envelope.
class UnsupportedRangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The sampling grid is too coarse for the requested waist.
class ResolutionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Expansion waist and beam field do not satisfy the matching condition.
class MatchingError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Projection onto the qubit pair found (numerically) nothing there.
class EmptySubspaceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A gate sequence that does not return the start state to its own ray.
class NotALoopError : public DomainError {
 public:
  NotALoopError(const std::string& what, double overlap_magnitude)
      : DomainError(what), overlap_magnitude_(overlap_magnitude) {}

  double overlap_magnitude() const noexcept { return overlap_magnitude_; }

 private:
  double overlap_magnitude_;
};

/// Fields on different grids combined.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition (non-unitary gate, unnormalized state).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Malformed binary or text dump.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace oamq
