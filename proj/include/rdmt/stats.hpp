#ifndef RDMT_STATS_HPP_
#define RDMT_STATS_HPP_

#include <functional>
#include <span>
#include <vector>

namespace rdmt {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Survival function of the limiting Kolmogorov distribution,
// P(K > lambda) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda);

// D = sup |F_N - F| for ascending samples; p from kolmogorov_sf(sqrt(N) D).
// Throws DomainError for fewer than 100 samples or unsorted input.
KsResult ks_one_sample(std::span<const double> sorted,
                       const std::function<double(double)>& cdf);

// Two-sample statistic; p uses the effective size n m / (n + m).  Same
// preconditions as the one-sample version for each input.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct MomentResult {
  double mean = 0.0;
  double standard_error = 0.0;
  double z = 0.0;
  bool pass = false;
};

// Passes when |mean - expected| <= tol_se * (sample standard error).
MomentResult moment_check(std::span<const double> values, double expected,
                          double tol_se);

template <class Sample, class Estimator>
MomentResult moment_check(const std::vector<Sample>& samples,
                          Estimator&& estimator, double expected,
                          double tol_se) {
  std::vector<double> values;
  values.reserve(samples.size());
  for (const auto& s : samples) values.push_back(estimator(s));
  return moment_check(std::span<const double>(values), expected, tol_se);
}

}  // namespace rdmt

#endif  // RDMT_STATS_HPP_
