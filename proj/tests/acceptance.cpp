// Runs the default verification suite twice and reports one line per
// acceptance criterion, with the wall time spent on the checks behind it.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "rdmt/verify.hpp"

using namespace rdmt;

namespace {

struct Criterion {
  int id;
  const char* title;
  std::vector<std::string> checks;
  double time_limit;
};

const std::vector<Criterion> kCriteria = {
    {1, "gamma-ratio identity", {"identity.gamma_ratio"}, 1},
    {2, "primal/dual form equivalence", {"identity.form_equivalence"}, 5},
    {3,
     "normalization (scalar radial and 2-D ordered cone)",
     {"normalization.scalar_families", "normalization.eigen_2d"},
     60},
    {4,
     "construction equivalence of T samplers",
     {"ks2.matric_t_constructions.beta1", "ks2.matric_t_constructions.beta2",
      "ks2.matric_t_constructions.beta4"},
     60},
    {5,
     "scalar laws (Cauchy, beta prime, matrix-multivariate T)",
     {"ks1.cauchy", "ks1.beta_prime", "ks1.matrix_mt_scalar"},
     30},
    {6,
     "Wishart constructions and mean",
     {"ks2.wishart_constructions", "moment.wishart_mean"},
     30},
    {7,
     "elliptical invariance",
     {"ks2.elliptical_invariance.beta1", "ks2.elliptical_invariance.beta2"},
     60},
    {8,
     "corrected vs printed normalising constants",
     {"normalization.uncorrected_variants"},
     30},
    {9, "largest eigenvalue marginal", {"ks1.lambda_max"}, 120},
};

std::uint64_t seed_from_env() {
  const char* s = std::getenv("RDMT_SEED");
  return s ? std::strtoull(s, nullptr, 10) : 11;
}

}  // namespace

int main() {
  const std::uint64_t seed = seed_from_env();
  const auto suite = default_suite();

  const auto t0 = std::chrono::steady_clock::now();
  const VerifyReport first = run_suite(suite, seed);
  const auto t1 = std::chrono::steady_clock::now();
  const VerifyReport second = run_suite(suite, seed);
  const double suite_seconds = std::chrono::duration<double>(t1 - t0).count();

  std::map<std::string, const CheckResult*> by_name;
  for (const CheckResult& r : first.checks) by_name[r.name] = &r;

  bool all = true;
  std::map<int, bool> passed;
  for (const Criterion& c : kCriteria) {
    bool ok = true;
    double seconds = 0.0;
    std::string notes;
    for (const std::string& name : c.checks) {
      const auto it = by_name.find(name);
      if (it == by_name.end()) {
        ok = false;
        notes += " " + name + "=missing";
        continue;
      }
      const CheckResult& r = *it->second;
      ok = ok && r.pass;
      seconds += r.wall_seconds;
      char buf[160];
      std::snprintf(buf, sizeof buf, " %s=%.3g%s", name.c_str(), r.statistic,
                    r.attempts > 1 ? "(rerun)" : "");
      notes += buf;
    }
    if (c.id == 8) {
      ok = ok && passed[3];
      const Json& d = by_name.count(c.checks[0])
                          ? by_name[c.checks[0]]->details
                          : Json::object();
      for (const char* key : {"beta2_cogram", "sv_matric_t"}) {
        if (!d.contains(key)) continue;
        char buf[160];
        std::snprintf(buf, sizeof buf, " %s: corrected %.9f printed %.6f", key,
                      d[key].value("corrected_mass", 0.0),
                      d[key].value("uncorrected_mass", 0.0));
        notes += buf;
      }
    }
    const bool in_time = seconds < c.time_limit;
    passed[c.id] = ok && in_time;
    all = all && passed[c.id];
    std::printf("criterion %d %s: %s (%.2f s, limit %.0f s)%s\n", c.id, c.title,
                passed[c.id] ? "PASS" : "FAIL", seconds, c.time_limit,
                notes.c_str());
  }

  const bool identical = to_json(first).dump() == to_json(second).dump();
  const bool ok10 = identical && suite_seconds < 300.0;
  all = all && ok10;
  std::printf(
      "criterion 10 reproducibility: %s (reports %s, suite %.2f s, limit 300 s)\n",
      ok10 ? "PASS" : "FAIL", identical ? "identical" : "differ", suite_seconds);
  std::printf("seed %llu, overall %s\n", static_cast<unsigned long long>(seed),
              all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
