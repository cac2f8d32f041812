#include "rdmt/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rdmt/special.hpp"

namespace rdmt {

namespace {

const double kLogPi = std::log(std::numbers::pi);

void check_shape(AlgebraTag tag, int m, int n, double nu,
                 const SpectrumSample& s, SpectrumKind kind, const char* what) {
  if (m < 1 || n < m) {
    throw DomainError(std::string(what) + ": need 1 <= m <= n");
  }
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw DomainError(std::string(what) + ": need nu > 0");
  }
  if (s.size() != static_cast<std::size_t>(m)) {
    throw DimensionMismatch(std::string(what) + ": expected " +
                            std::to_string(m) + " values");
  }
  if (s.kind() != kind) {
    throw DomainError(std::string(what) + ": wrong spectrum kind");
  }
  (void)tag;
}

// log of pi^(beta m^2/2 + tau) / Gamma_m[beta m/2].
double haar_log_factor(AlgebraTag tag, int m) {
  const double b = tag.beta();
  return (b * m * m / 2.0 + tau(tag, m)) * kLogPi -
         log_mvgamma(tag, m, b * m / 2.0);
}

// Sum over eigenvalues of (power) log x_i plus beta sum_{i<j} log(x_i - x_j).
double eigen_kernel(double b, double power, const std::vector<double>& x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += power * std::log(x[i]);
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      acc += b * std::log(x[i] - x[j]);
    }
  }
  return acc;
}

std::vector<double> squares(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * v[i];
  return out;
}

double sum_log(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += std::log(x);
  return acc;
}

double log_eig_beta2_unchecked(AlgebraTag tag, int m, int n, double nu,
                               const std::vector<double>& lambdas) {
  const double b = tag.beta();
  double value = haar_log_factor(tag, m) -
                 log_mvbeta(tag, m, b * nu / 2.0, b * n / 2.0) +
                 eigen_kernel(b, b * (n - m + 1) / 2.0 - 1.0, lambdas);
  for (double l : lambdas) value -= b * (nu + n) / 2.0 * std::log1p(l);
  return value;
}

double log_eig_mv_unchecked(AlgebraTag tag, int m, int n, double nu,
                            const std::vector<double>& gammas) {
  const double b = tag.beta();
  const double mn = static_cast<double>(m) * n;
  double total = 0.0;
  for (double g : gammas) total += g;
  return haar_log_factor(tag, m) + log_gamma(b * (nu + mn) / 2.0) -
         log_gamma(b * nu / 2.0) - log_mvgamma(tag, m, b * n / 2.0) +
         eigen_kernel(b, b * (n - m + 1) / 2.0 - 1.0, gammas) -
         b * (nu + mn) / 2.0 * std::log1p(total);
}

// Change of variables lambda = delta^2: d lambda_i = 2 delta_i d delta_i.
double sv_jacobian(int m, const std::vector<double>& deltas) {
  return m * std::log(2.0) + sum_log(deltas);
}

}  // namespace

SpectrumSample::SpectrumSample(std::vector<double> values, SpectrumKind kind)
    : values_(std::move(values)), kind_(kind) {
  if (values_.empty()) throw OrderingError("spectrum is empty");
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw OrderingError("spectrum values must be positive and finite");
    }
  }
  const double scale = values_.front();
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
    if (values_[i] - values_[i + 1] <= kTieTolerance * scale) {
      throw OrderingError("spectrum values must be strictly descending");
    }
  }
}

double log_joint_sv_matric_t(AlgebraTag tag, int m, int n, double nu,
                             const SpectrumSample& deltas) {
  check_shape(tag, m, n, nu, deltas, SpectrumKind::singular,
              "log_joint_sv_matric_t");
  return log_eig_beta2_unchecked(tag, m, n, nu, squares(deltas.values())) +
         sv_jacobian(m, deltas.values());
}

double log_joint_sv_matrix_mt(AlgebraTag tag, int m, int n, double nu,
                              const SpectrumSample& alphas) {
  check_shape(tag, m, n, nu, alphas, SpectrumKind::singular,
              "log_joint_sv_matrix_mt");
  return log_eig_mv_unchecked(tag, m, n, nu, squares(alphas.values())) +
         sv_jacobian(m, alphas.values());
}

double log_joint_eig_beta2(AlgebraTag tag, int m, int n, double nu,
                           const SpectrumSample& lambdas) {
  check_shape(tag, m, n, nu, lambdas, SpectrumKind::eigen,
              "log_joint_eig_beta2");
  return log_eig_beta2_unchecked(tag, m, n, nu, lambdas.values());
}

double log_joint_eig_mv(AlgebraTag tag, int m, int n, double nu,
                        const SpectrumSample& gammas) {
  check_shape(tag, m, n, nu, gammas, SpectrumKind::eigen, "log_joint_eig_mv");
  return log_eig_mv_unchecked(tag, m, n, nu, gammas.values());
}

double log_joint_spectrum(SpectralFamily family, AlgebraTag tag, int m, int n,
                          double nu, const SpectrumSample& sample) {
  const bool sv = sample.kind() == SpectrumKind::singular;
  if (family == SpectralFamily::matric_t) {
    return sv ? log_joint_sv_matric_t(tag, m, n, nu, sample)
              : log_joint_eig_beta2(tag, m, n, nu, sample);
  }
  return sv ? log_joint_sv_matrix_mt(tag, m, n, nu, sample)
            : log_joint_eig_mv(tag, m, n, nu, sample);
}

SpectrumSample empirical_spectrum(const DivMatrix& x, SpectrumKind kind) {
  if (x.beta() == 8) {
    throw Unsupported("empirical_spectrum: octonion matrices not supported");
  }
  if (kind == SpectrumKind::singular) {
    return SpectrumSample(singular_values(x), kind);
  }
  return SpectrumSample(hermitian_eigenvalues(x), kind);
}

}  // namespace rdmt
