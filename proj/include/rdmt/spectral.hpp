#ifndef RDMT_SPECTRAL_HPP_
#define RDMT_SPECTRAL_HPP_

#include <vector>

#include "rdmt/algebra.hpp"

namespace rdmt {

enum class SpectrumKind { singular, eigen };

// Positive, strictly descending singular values or eigenvalues.
class SpectrumSample {
 public:
  // Relative gap below which two neighbouring values count as a tie.
  static constexpr double kTieTolerance = 1e-12;

  // Throws OrderingError when the values are empty, not strictly
  // descending, tied, or not positive.
  SpectrumSample(std::vector<double> values, SpectrumKind kind);

  const std::vector<double>& values() const { return values_; }
  SpectrumKind kind() const { return kind_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
  SpectrumKind kind_;
};

// Joint densities of the spectra of a standard m x n matricvariate T
// (n >= m) and of the gram beta II matrix F = T T*.  The normalising
// constants use pi^(beta m^2 / 2 + tau); see "Normalising constants" in README.md.
//
// Singular values delta:
//   2^m pi^(beta m^2/2 + tau) / (Gamma_m[beta m/2] B_m[beta nu/2, beta n/2])
//   * prod delta_i^(beta (n-m+1) - 1) (1 + delta_i^2)^(-beta (nu+n)/2)
//   * prod_{i<j} (delta_i^2 - delta_j^2)^beta
double log_joint_sv_matric_t(AlgebraTag tag, int m, int n, double nu,
                             const SpectrumSample& deltas);

// Singular values of a standard matrix multivariate T (rho = 1); the
// kernel is (1 + sum alpha_i^2)^(-beta (nu + m n)/2).
double log_joint_sv_matrix_mt(AlgebraTag tag, int m, int n, double nu,
                              const SpectrumSample& alphas);

// Eigenvalues lambda_i = delta_i^2 of the matricvariate beta II matrix.
double log_joint_eig_beta2(AlgebraTag tag, int m, int n, double nu,
                           const SpectrumSample& lambdas);

// Eigenvalues gamma_i = alpha_i^2 of the matrix multivariate beta II
// matrix.
double log_joint_eig_mv(AlgebraTag tag, int m, int n, double nu,
                        const SpectrumSample& gammas);

enum class SpectralFamily { matric_t, matrix_mt };

// Dispatches on family and on the sample's kind.
double log_joint_spectrum(SpectralFamily family, AlgebraTag tag, int m, int n,
                          double nu, const SpectrumSample& sample);

// Singular values of X (kind = singular) or eigenvalues of the Hermitian X
// (kind = eigen), descending.  Throws Unsupported for beta = 8 and
// OrderingError on a tie.
SpectrumSample empirical_spectrum(const DivMatrix& x, SpectrumKind kind);

}  // namespace rdmt

#endif  // RDMT_SPECTRAL_HPP_
