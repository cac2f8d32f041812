#ifndef RDMT_SPECIAL_HPP_
#define RDMT_SPECIAL_HPP_

#include "rdmt/algebra.hpp"

namespace rdmt {

// log Gamma(x) for real x > 0 (Lanczos approximation, g = 7, with
// reflection below 1/2).  Throws DomainError for x <= 0.
double log_gamma(double x);

// Argument of the multivariate gamma function over m x m Hermitian
// matrices of the given algebra.  Valid when a > (m - 1) beta / 2.
struct GammaArgs {
  AlgebraTag tag;
  int m;
  double a;
};

//======================================================================
// Returns the log of
//   Gamma_m^beta[a] = pi^(m (m-1) beta / 4) prod_{i=1}^m Gamma(a - (i-1) beta / 2).
// Throws DomainError unless m >= 1 and a > (m-1) beta / 2.
double log_mvgamma(const GammaArgs& args);
double log_mvgamma(AlgebraTag tag, int m, double a);

// log B_m^beta[a, b] = log Gamma_m[a] + log Gamma_m[b] - log Gamma_m[a + b].
double log_mvbeta(AlgebraTag tag, int m, double a, double b);

// log of the volume of the Stiefel manifold of m x n matrices with
// orthonormal rows, 2^m pi^(m n beta / 2) / Gamma_m^beta[n beta / 2].  For
// m = 1 this is the surface area of the unit sphere in R^(n beta).
// Throws DomainError if m > n.
double stiefel_log_volume(AlgebraTag tag, int m, int n);

// Power of pi in the singular value Jacobian: 0, -m, -2m, -4m for
// beta = 1, 2, 4, 8.
int tau(AlgebraTag tag, int m);

// log(Gamma_m[b(n+nu)/2] / Gamma_m[b nu/2])
//   - log(Gamma_n[b(n+nu)/2] / Gamma_n[b(n+nu-m)/2]),
// zero up to round-off whenever both sides are defined (nu > m - 1).
double log_gamma_ratio_identity_gap(AlgebraTag tag, int m, int n, double nu);

}  // namespace rdmt

#endif  // RDMT_SPECIAL_HPP_
