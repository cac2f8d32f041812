#ifndef RDMT_ERRORS_HPP_
#define RDMT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rdmt {

// Root of every error the library throws. Callers that only care whether an
// operation succeeded can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (e.g. a gamma
// argument below (m-1)beta/2, or degrees of freedom too small).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Shapes or algebra tags of operands do not agree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Cholesky met a non-positive pivot.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

// Operation is not defined for the given algebra; octonion matrices beyond
// 1x1 are the main case.
class Unsupported : public Error {
 public:
  using Error::Error;
};

// Spectrum values not strictly descending and positive.
class OrderingError : public Error {
 public:
  using Error::Error;
};

// An iterative numerical routine (quadrature, eigen solver pairing) failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Input text (JSON records, suite files, point files) does not follow the
// expected schema.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace rdmt

#endif  // RDMT_ERRORS_HPP_
