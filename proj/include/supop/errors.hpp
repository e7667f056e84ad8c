#pragma once

#include <stdexcept>
#include <string>

namespace supop {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments or misuse of an interface (caller bug).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Numerical failure: inadequate truncation, degenerate or annihilated
/// states, non-convergent sums. Usually fixable by changing parameters.
class NumericError : public Error {
  public:
    using Error::Error;
};

struct InvalidCutoff : ValidationError { using ValidationError::ValidationError; };
struct OutOfRange : ValidationError { using ValidationError::ValidationError; };
struct DimensionMismatch : ValidationError { using ValidationError::ValidationError; };
struct ModeCollision : ValidationError { using ValidationError::ValidationError; };
struct ConfigError : ValidationError { using ValidationError::ValidationError; };

struct TruncationError : NumericError { using NumericError::NumericError; };
struct ZeroTrace : NumericError { using NumericError::NumericError; };
struct UnitarityError : NumericError { using NumericError::NumericError; };
struct OrderingSingularity : NumericError { using NumericError::NumericError; };
struct DegenerateState : NumericError { using NumericError::NumericError; };
struct DegenerateDisc : NumericError { using NumericError::NumericError; };
struct DomainTooSmall : NumericError { using NumericError::NumericError; };
struct UndefinedQ : NumericError { using NumericError::NumericError; };
struct ZeroProbability : NumericError { using NumericError::NumericError; };

}  // namespace supop
