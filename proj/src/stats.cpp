#include "rdmt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rdmt/errors.hpp"

namespace rdmt {

namespace {

void check_sorted(std::span<const double> x, const char* what) {
  if (x.size() < 100) {
    throw DomainError(std::string(what) + ": need at least 100 samples");
  }
  if (!std::is_sorted(x.begin(), x.end())) {
    throw DomainError(std::string(what) + ": samples must be sorted");
  }
}

}  // namespace

double kolmogorov_sf(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.0) {
    // Jacobi theta form of the CDF, fast for small lambda.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double cdf = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double odd = 2.0 * k - 1.0;
      cdf += std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_one_sample(std::span<const double> sorted,
                       const std::function<double(double)>& cdf) {
  check_sorted(sorted, "ks_one_sample");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f,
                  f - static_cast<double>(i) / n});
  }
  return {d, kolmogorov_sf(std::sqrt(n) * d)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  check_sorted(a, "ks_two_sample");
  check_sorted(b, "ks_two_sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  const double en = na * nb / (na + nb);
  return {d, kolmogorov_sf(std::sqrt(en) * d)};
}

MomentResult moment_check(std::span<const double> values, double expected,
                          double tol_se) {
  if (values.size() < 2) throw DomainError("moment_check: need two samples");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double se = std::sqrt(ss / (n - 1.0) / n);
  MomentResult r;
  r.mean = mean;
  r.standard_error = se;
  r.z = se > 0.0 ? (mean - expected) / se
                 : (mean == expected ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), mean - expected));
  r.pass = std::abs(mean - expected) <= tol_se * se;
  return r;
}

}  // namespace rdmt
