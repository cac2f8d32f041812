#ifndef RDMT_TESTS_TEST_UTIL_HPP_
#define RDMT_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "rdmt/algebra.hpp"

namespace rdmt::test {

// Matrix from row-major coefficients, beta doubles per entry.
inline DivMatrix coeff_matrix(AlgebraTag tag, Index rows, Index cols,
                              std::initializer_list<double> coeffs) {
  DivMatrix x(tag, rows, cols);
  if (coeffs.size() != x.raw().size()) {
    throw std::invalid_argument("coeff_matrix: wrong coefficient count");
  }
  std::copy(coeffs.begin(), coeffs.end(), x.raw().begin());
  return x;
}

inline double max_abs_diff(const DivMatrix& a, const DivMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) {
    d = std::max(d, std::abs(a.raw()[i] - b.raw()[i]));
  }
  return d;
}

// Tolerance relative to the size of the reference value.
inline bool close(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

}  // namespace rdmt::test

#endif  // RDMT_TESTS_TEST_UTIL_HPP_
