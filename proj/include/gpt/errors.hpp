#pragma once

#include <stdexcept>
#include <string>

namespace gpt {

/// Base class for all library errors. The CLI maps these to exit code 2;
/// anything else is an internal error (exit code 1).
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : Error {
  using Error::Error;
};

/// Raised when a test is a proper subset of another (Def. of test space
/// forbids E ⊊ F).
struct IrredundanceError : Error {
  using Error::Error;
};

struct UnknownOutcomeError : Error {
  using Error::Error;
};

struct NotAWeightError : Error {
  using Error::Error;
};

struct OwnerMismatchError : Error {
  using Error::Error;
};

struct BudgetExceededError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct NotInPolytopeError : Error {
  using Error::Error;
};

struct EmptyModelError : Error {
  using Error::Error;
};

struct NotAlgebraicError : Error {
  using Error::Error;
};

struct NotPairwiseOrthogonalError : Error {
  using Error::Error;
};

struct EmptyStateSpaceError : Error {
  using Error::Error;
};

struct NotInSpanError : Error {
  using Error::Error;
};

struct NotAStateError : Error {
  using Error::Error;
};

struct MissingTransitionError : Error {
  using Error::Error;
};

struct NotPerspectiveError : Error {
  using Error::Error;
};

struct NotNonsignalingError : Error {
  using Error::Error;
};

struct ZeroMarginalError : Error {
  using Error::Error;
};

struct NotAMorphismError : Error {
  using Error::Error;
};

}  // namespace gpt
