#include "rdmt/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace rdmt {

namespace {

// Godfrey's coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

void check_m(int m, const char* what) {
  if (m < 1) throw DomainError(std::string(what) + ": m must be positive");
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite");
  }
  if (x < 0.5) {
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
           log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    a += kLanczos[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(a);
}

double log_mvgamma(const GammaArgs& args) {
  check_m(args.m, "log_mvgamma");
  const double beta = args.tag.beta();
  const double m = args.m;
  if (!(args.a > (m - 1.0) * beta / 2.0)) {
    throw DomainError("log_mvgamma: need a > (m-1) beta / 2 (a = " +
                      std::to_string(args.a) + ", m = " +
                      std::to_string(args.m) + ", beta = " +
                      std::to_string(args.tag.beta()) + ")");
  }
  double acc = m * (m - 1.0) * beta / 4.0 * std::log(std::numbers::pi);
  for (int i = 0; i < args.m; ++i) acc += log_gamma(args.a - i * beta / 2.0);
  return acc;
}

double log_mvgamma(AlgebraTag tag, int m, double a) {
  return log_mvgamma(GammaArgs{tag, m, a});
}

double log_mvbeta(AlgebraTag tag, int m, double a, double b) {
  return log_mvgamma(tag, m, a) + log_mvgamma(tag, m, b) -
         log_mvgamma(tag, m, a + b);
}

double stiefel_log_volume(AlgebraTag tag, int m, int n) {
  check_m(m, "stiefel_log_volume");
  if (m > n) throw DomainError("stiefel_log_volume: need n >= m");
  const double beta = tag.beta();
  return m * std::log(2.0) +
         m * n * beta / 2.0 * std::log(std::numbers::pi) -
         log_mvgamma(tag, m, n * beta / 2.0);
}

int tau(AlgebraTag tag, int m) {
  switch (tag.beta()) {
    case 1:
      return 0;
    case 2:
      return -m;
    case 4:
      return -2 * m;
    default:
      return -4 * m;
  }
}

double log_gamma_ratio_identity_gap(AlgebraTag tag, int m, int n, double nu) {
  check_m(m, "log_gamma_ratio_identity_gap");
  check_m(n, "log_gamma_ratio_identity_gap");
  const double b = tag.beta();
  const double lhs = log_mvgamma(tag, m, b * (n + nu) / 2.0) -
                     log_mvgamma(tag, m, b * nu / 2.0);
  const double rhs = log_mvgamma(tag, n, b * (n + nu) / 2.0) -
                     log_mvgamma(tag, n, b * (n + nu - m) / 2.0);
  return lhs - rhs;
}

}  // namespace rdmt
