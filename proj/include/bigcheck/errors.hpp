#pragma once

#include <stdexcept>
#include <string>

namespace bigcheck {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define BIGCHECK_DEFINE_ERROR(Name, Base)                                      \
  class Name : public Base {                                                   \
  public:                                                                      \
    explicit Name(const std::string &what) : Base(#Name ": " + what) {}        \
  };

BIGCHECK_DEFINE_ERROR(NotPrime, Error)
BIGCHECK_DEFINE_ERROR(DivisionByZero, Error)
BIGCHECK_DEFINE_ERROR(FieldMismatch, Error)
BIGCHECK_DEFINE_ERROR(ZeroArgument, Error)
BIGCHECK_DEFINE_ERROR(ZeroPolynomial, Error)
BIGCHECK_DEFINE_ERROR(ZeroVector, Error)
BIGCHECK_DEFINE_ERROR(NotSimpleRoot, Error)
BIGCHECK_DEFINE_ERROR(NotInvertible, Error)
BIGCHECK_DEFINE_ERROR(PreconditionViolation, Error)
BIGCHECK_DEFINE_ERROR(BadPrime, Error)
BIGCHECK_DEFINE_ERROR(BadOrder, Error)
BIGCHECK_DEFINE_ERROR(HypothesisFailed, Error)
BIGCHECK_DEFINE_ERROR(NotFound, Error)
BIGCHECK_DEFINE_ERROR(ParseError, Error)

/// Resource limits. The CLI maps every subclass to the "budget" exit code.
class LimitError : public Error {
public:
  using Error::Error;
};

BIGCHECK_DEFINE_ERROR(TooLarge, LimitError)
BIGCHECK_DEFINE_ERROR(CapExceeded, LimitError)
BIGCHECK_DEFINE_ERROR(BudgetExceeded, LimitError)
BIGCHECK_DEFINE_ERROR(TooLargeForOracle, LimitError)

#undef BIGCHECK_DEFINE_ERROR

} // namespace bigcheck
