#ifndef RDMT_VERIFY_HPP_
#define RDMT_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "rdmt/io.hpp"
#include "rdmt/quadrature.hpp"
#include "rdmt/stats.hpp"

namespace rdmt {

enum class CheckKind { normalization, ks1, ks2, moment, identity };

const char* to_string(CheckKind kind);
CheckKind check_kind_from_string(const std::string& s);

// One verification check.  `params` holds a "target" naming the experiment
// plus optional overrides of its defaults.  `budget` is the sample size for
// KS and moment checks, the number of random cases for identity checks and
// the absolute quadrature tolerance for normalization checks.  `threshold`
// is the minimum p-value for KS checks, the maximum |z| for moment checks
// and the maximum absolute error otherwise.
struct CheckSpec {
  std::string name;
  CheckKind kind = CheckKind::identity;
  Json params = Json::object();
  double budget = 0.0;
  double threshold = 0.0;

  // Throws DomainError when the threshold or budget does not fit the kind.
  void validate() const;
};

struct CheckResult {
  std::string name;
  CheckKind kind = CheckKind::identity;
  // Smallest p-value for KS checks, largest |z| for moment checks, largest
  // absolute error otherwise.
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  // 2 when the first attempt failed and the check was rerun.
  int attempts = 1;
  double wall_seconds = 0.0;
  Json details = Json::object();
};

struct VerifyReport {
  std::vector<CheckResult> checks;  // sorted by name
  bool pass = true;
  std::uint64_t seed = 0;
  std::string version;
};

struct SuiteOptions {
  // Worker threads; checks are independent so the report does not depend
  // on this.
  int jobs = 1;
  // Wall times vary between runs, so they are left out of the JSON unless
  // asked for.
  bool include_timings = false;
};

// Runs one check on the stream (seed, index); a failing stochastic check
// is rerun once on the stream (seed, index + 2^32).  Failures and
// exceptions are recorded in the result, never thrown.
CheckResult run_check(const CheckSpec& spec, std::uint64_t seed,
                      std::uint64_t index);

VerifyReport run_suite(const std::vector<CheckSpec>& config,
                       std::uint64_t seed, const SuiteOptions& opts = {});

Json to_json(const CheckSpec& spec);
CheckSpec check_spec_from_json(const Json& j);
std::vector<CheckSpec> suite_from_json(const Json& j);
Json to_json(const VerifyReport& report, bool include_timings = false);

// The built-in suite: gamma-ratio identity, primal/dual density agreement,
// scalar and two-dimensional normalisation, the uncorrected-constant
// variants, construction equivalence for T and Wishart draws, scalar laws,
// elliptical invariance, the largest-eigenvalue marginal and a few moments.
std::vector<CheckSpec> default_suite();

// Registered experiment names, for error messages and documentation.
std::vector<std::string> check_targets();

}  // namespace rdmt

#endif  // RDMT_VERIFY_HPP_
