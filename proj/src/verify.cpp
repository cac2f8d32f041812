#include "rdmt/verify.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/special_functions/beta.hpp>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <thread>

#include "rdmt/distributions.hpp"
#include "rdmt/special.hpp"
#include "rdmt/spectral.hpp"
#include "rdmt/version.hpp"

namespace rdmt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogPi = std::log(std::numbers::pi);

struct Outcome {
  double statistic = 0.0;
  bool pass = false;
  Json details = Json::object();
};

using Experiment = Outcome (*)(const CheckSpec&, RngStream&);

struct Target {
  CheckKind kind;
  bool stochastic;
  Experiment run;
};

//----------------------------------------------------------------------
// Parameter helpers.

const Json& params_of(const CheckSpec& spec) { return spec.params; }

double get_double(const CheckSpec& spec, const char* key, double fallback) {
  const Json& p = params_of(spec);
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_number()) {
    throw FormatError(std::string("check parameter ") + key + ": expected a number");
  }
  return p.at(key).get<double>();
}

int get_int(const CheckSpec& spec, const char* key, int fallback) {
  const Json& p = params_of(spec);
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_number_integer()) {
    throw FormatError(std::string("check parameter ") + key +
                      ": expected an integer");
  }
  return p.at(key).get<int>();
}

std::vector<int> get_ints(const CheckSpec& spec, const char* key,
                          std::vector<int> fallback) {
  const Json& p = params_of(spec);
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_array()) {
    throw FormatError(std::string("check parameter ") + key +
                      ": expected an array of integers");
  }
  std::vector<int> out;
  for (const Json& x : p.at(key)) {
    if (!x.is_number_integer()) {
      throw FormatError(std::string("check parameter ") + key +
                        ": expected an array of integers");
    }
    out.push_back(x.get<int>());
  }
  return out;
}

AlgebraTag get_tag(const CheckSpec& spec, int fallback) {
  return AlgebraTag::from_beta(get_int(spec, "beta", fallback));
}

Index sample_size(const CheckSpec& spec) {
  return static_cast<Index>(std::llround(spec.budget));
}

QuadratureOptions quad_options(const CheckSpec& spec) {
  QuadratureOptions o;
  o.abs_tol = spec.budget;
  o.rel_tol = std::min(1e-10, spec.budget);
  return o;
}

int uniform_int(RngStream& rng, int lo, int hi) {
  const double u = rng.uniform();
  return std::min(hi, lo + static_cast<int>(u * (hi - lo + 1)));
}

HermitianPD random_hpd(RngStream& rng, AlgebraTag tag, Index n) {
  const DivMatrix a = sample_gaussian(rng, tag, n, n);
  DivMatrix g = matmul(a, conj_transpose(a));
  for (Index i = 0; i < n; ++i) g.entry(i, i)[0] += 0.5;
  return HermitianPD(g);
}

DivMatrix scalar_matrix(AlgebraTag tag, double x) {
  DivMatrix f(tag, 1, 1);
  f.entry(0, 0)[0] = x;
  return f;
}

HermitianPD scalar_hpd(AlgebraTag tag, double x) {
  return HermitianPD(scalar_matrix(tag, x));
}

// Ascending copies of each coordinate of a list of spectra.
std::vector<std::vector<double>> columns(
    const std::vector<std::vector<double>>& rows) {
  std::vector<std::vector<double>> cols(rows.front().size());
  for (auto& c : cols) c.reserve(rows.size());
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) cols[k].push_back(r[k]);
  }
  for (auto& c : cols) std::sort(c.begin(), c.end());
  return cols;
}

Outcome compare_spectra(const std::vector<std::vector<double>>& a,
                        const std::vector<std::vector<double>>& b,
                        double threshold) {
  const auto ca = columns(a);
  const auto cb = columns(b);
  Outcome out;
  out.statistic = 1.0;
  Json tests = Json::array();
  for (std::size_t k = 0; k < ca.size(); ++k) {
    const KsResult r = ks_two_sample(ca[k], cb[k]);
    tests.push_back({{"index", k + 1}, {"D", r.statistic}, {"p", r.p_value}});
    out.statistic = std::min(out.statistic, r.p_value);
  }
  out.details["tests"] = std::move(tests);
  out.pass = out.statistic > threshold;
  return out;
}

Outcome one_sample(std::vector<double> samples,
                   const std::function<double(double)>& cdf, double threshold) {
  std::sort(samples.begin(), samples.end());
  const KsResult r = ks_one_sample(samples, cdf);
  Outcome out;
  out.statistic = r.p_value;
  out.pass = r.p_value > threshold;
  out.details = {{"D", r.statistic}, {"p", r.p_value}, {"n", samples.size()}};
  return out;
}

double log_sphere(int dim) {
  const double d = dim;
  return std::log(2.0) + d / 2.0 * kLogPi - log_gamma(d / 2.0);
}

//----------------------------------------------------------------------
// Identities.

Outcome gamma_ratio(const CheckSpec& spec, RngStream& rng) {
  const auto cases = sample_size(spec);
  const int max_dim = get_int(spec, "max_dim", 5);
  Outcome out;
  Json worst;
  for (Index c = 0; c < cases; ++c) {
    const AlgebraTag tag = AlgebraTag::from_beta(1 << uniform_int(rng, 0, 3));
    const int m = uniform_int(rng, 1, max_dim);
    const int n = uniform_int(rng, 1, max_dim);
    const double nu = (m - 1) + 0.05 + 6.0 * rng.uniform();
    const double gap = std::abs(log_gamma_ratio_identity_gap(tag, m, n, nu));
    if (gap >= out.statistic) {
      out.statistic = gap;
      worst = {{"beta", tag.beta()}, {"m", m}, {"n", n}, {"nu", nu}};
    }
  }
  out.pass = out.statistic < spec.threshold;
  out.details = {{"cases", cases}, {"worst", worst}};
  return out;
}

Outcome form_equivalence(const CheckSpec& spec, RngStream& rng) {
  const auto per_beta = sample_size(spec);
  const int max_dim = get_int(spec, "max_dim", 4);
  Outcome out;
  Json worst;
  Json per = Json::object();
  for (int beta : get_ints(spec, "betas", {1, 2, 4})) {
    const AlgebraTag tag = AlgebraTag::from_beta(beta);
    double beta_worst = 0.0;
    for (Index c = 0; c < per_beta; ++c) {
      const auto m = static_cast<Index>(uniform_int(rng, 1, max_dim));
      const auto n = static_cast<Index>(uniform_int(rng, 1, max_dim));
      const double nu = beta * (m - 1.0) + 0.5 + 4.0 * rng.uniform();
      MatricTParams p{tag,
                      m,
                      n,
                      nu,
                      sample_gaussian(rng, tag, m, n),
                      random_hpd(rng, tag, m),
                      random_hpd(rng, tag, n)};
      const DivMatrix t = p.mu + sample_gaussian(rng, tag, m, n) * 1.5;
      const double gap =
          std::abs(logpdf_matric_t(p, t, DensityForm::primal) -
                   logpdf_matric_t(p, t, DensityForm::dual));
      beta_worst = std::max(beta_worst, gap);
      if (gap >= out.statistic) {
        out.statistic = gap;
        worst = {{"beta", beta}, {"m", m}, {"n", n}, {"nu", nu}};
      }
    }
    per[std::to_string(beta)] = beta_worst;
  }
  out.pass = out.statistic < spec.threshold;
  out.details = {{"cases_per_beta", per_beta},
                 {"max_gap_by_beta", per},
                 {"worst", worst}};
  return out;
}

//----------------------------------------------------------------------
// Normalisation.

Outcome scalar_families(const CheckSpec& spec, RngStream&) {
  const QuadratureOptions opts = quad_options(spec);
  const double nu = get_double(spec, "nu", 2.5);
  const double rho = get_double(spec, "rho", 1.5);
  const double s = get_double(spec, "scale", 2.5);
  Outcome out;
  Json rows = Json::array();
  auto record = [&](const char* family, int beta, int n, double mass) {
    const double err = std::abs(mass - 1.0);
    out.statistic = std::max(out.statistic, err);
    rows.push_back({{"family", family}, {"beta", beta}, {"n", n}, {"mass", mass}});
  };
  for (int beta : get_ints(spec, "betas", {1, 2, 4, 8})) {
    const AlgebraTag tag = AlgebraTag::from_beta(beta);
    for (int n : get_ints(spec, "ns", {1, 2, 3})) {
      const auto ni = static_cast<Index>(n);
      record("matric_t", beta, n,
             quadrature_mass_radial(
                 [&](double r2) { return logpdf_matric_t_row(tag, ni, nu, r2); },
                 beta * n, opts));
      record("matrix_mt", beta, n,
             quadrature_mass_radial(
                 [&](double r2) {
                   return logpdf_matrix_mt_row(tag, ni, nu, rho, r2);
                 },
                 beta * n, opts));
      // F = T T* for a 1 x n row and F = T* T for an (n + 1) x 1 column;
      // the column case needs nu > m - 1, so it is shifted by n.
      const BetaIIParams shapes[] = {
          {tag, 1, ni, nu, Orientation::gram, std::nullopt},
          {tag, 1, ni, nu, Orientation::gram, scalar_hpd(tag, s)},
          {tag, ni + 1, 1, nu + n, Orientation::cogram, std::nullopt},
          {tag, ni + 1, 1, nu + n, Orientation::cogram, scalar_hpd(tag, s)}};
      for (const BetaIIParams& p : shapes) {
        const bool gram = p.orientation == Orientation::gram;
        const bool scaled = p.scale.has_value();
        const double mm = quadrature_mass_halfline(
            [&](double x) {
              return logpdf_beta2_matric(p, scalar_matrix(tag, x));
            },
            opts);
        const double mv = quadrature_mass_halfline(
            [&](double x) {
              return logpdf_beta2_multivariate(p, scalar_matrix(tag, x));
            },
            opts);
        if (gram) {
          record(scaled ? "beta2_matric_gram_scaled" : "beta2_matric_gram",
                 beta, n, mm);
          record(scaled ? "beta2_mv_gram_scaled" : "beta2_mv_gram", beta, n,
                 mv);
        } else {
          record(scaled ? "beta2_matric_cogram_scaled" : "beta2_matric_cogram",
                 beta, n + 1, mm);
          record(scaled ? "beta2_mv_cogram_scaled" : "beta2_mv_cogram", beta,
                 n + 1, mv);
        }
      }
    }
  }
  out.pass = out.statistic < spec.threshold;
  out.details = {{"nu", nu}, {"rho", rho}, {"scale", s}, {"masses", rows}};
  return out;
}

// Mass of a symmetric-extended density of two positive values over the
// open quadrant, divided by 2!, so it equals the mass over the ordered cone.
double ordered_pair_mass(const std::function<double(double, double)>& logf,
                         const QuadratureOptions& outer) {
  QuadratureOptions inner = outer;
  inner.abs_tol = outer.abs_tol * 1e-3;
  const auto g = [&](double u, double v) {
    if (u == v) return 0.0;
    const double x = std::exp(std::max(u, v));
    const double y = std::exp(std::min(u, v));
    if (!(x > y)) return 0.0;
    double lv;
    try {
      lv = logf(x, y);
    } catch (const OrderingError&) {
      return 0.0;
    }
    const double val = u + v + lv;
    return std::isfinite(val) ? std::exp(val) : 0.0;
  };
  const auto slice = [&](double u) {
    const auto h = [&](double v) { return g(u, v); };
    return integrate_line(h, -kInf, u, inner).value +
           integrate_line(h, u, kInf, inner).value;
  };
  return integrate_line(slice, -kInf, kInf, outer).value / 2.0;
}

Outcome eigen_2d(const CheckSpec& spec, RngStream&) {
  const QuadratureOptions opts = quad_options(spec);
  const AlgebraTag tag = get_tag(spec, 1);
  const int n = get_int(spec, "n", 3);
  const double nu = get_double(spec, "nu", 3.0);
  const int sv_n = get_int(spec, "sv_n", 2);
  Outcome out;
  Json rows = Json::array();
  auto pair = [](double x, double y, SpectrumKind kind) {
    return SpectrumSample({x, y}, kind);
  };
  const std::pair<const char*, std::function<double(double, double)>> cases[] = {
      {"eig_beta2",
       [&](double x, double y) {
         return log_joint_eig_beta2(tag, 2, n, nu,
                                    pair(x, y, SpectrumKind::eigen));
       }},
      {"eig_mv",
       [&](double x, double y) {
         return log_joint_eig_mv(tag, 2, n, nu, pair(x, y, SpectrumKind::eigen));
       }},
      {"sv_matrix_mt",
       [&](double x, double y) {
         return log_joint_sv_matrix_mt(tag, 2, sv_n, nu,
                                       pair(x, y, SpectrumKind::singular));
       }}};
  for (const auto& [name, f] : cases) {
    const double mass = ordered_pair_mass(f, opts);
    out.statistic = std::max(out.statistic, std::abs(mass - 1.0));
    rows.push_back({{"density", name}, {"mass", mass}});
  }
  out.pass = out.statistic < spec.threshold;
  out.details = {{"beta", tag.beta()}, {"m", 2}, {"n", n},
                 {"sv_n", sv_n},       {"nu", nu}, {"masses", rows}};
  return out;
}

// Normalising constants as printed before correction: the cogram beta II
// exponent with a trailing -1, and pi^(beta m^2 + tau) in the singular
// value density.
Outcome uncorrected_variants(const CheckSpec& spec, RngStream&) {
  const QuadratureOptions opts = quad_options(spec);
  const AlgebraTag tag = get_tag(spec, 1);
  const double b = tag.beta();
  Outcome out;

  const BetaIIParams cogram{tag,
                            static_cast<Index>(get_int(spec, "cogram_m", 2)),
                            1,
                            get_double(spec, "cogram_nu", 2.0),
                            Orientation::cogram,
                            std::nullopt};
  const double cogram_ok = quadrature_mass_halfline(
      [&](double x) { return logpdf_beta2_matric(cogram, scalar_matrix(tag, x)); },
      opts);
  const double cogram_printed = quadrature_mass_halfline(
      [&](double x) {
        return logpdf_beta2_matric(cogram, scalar_matrix(tag, x)) -
               std::log1p(x);
      },
      opts);

  const int sv_n = get_int(spec, "sv_n", 1);
  const double sv_nu = get_double(spec, "sv_nu", 1.0);
  const auto sv = [&](double d) {
    return log_joint_sv_matric_t(tag, 1, sv_n, sv_nu,
                                 SpectrumSample({d}, SpectrumKind::singular));
  };
  const double sv_ok = quadrature_mass_halfline(sv, opts);
  const double sv_printed = quadrature_mass_halfline(
      [&](double d) { return sv(d) + b / 2.0 * kLogPi; }, opts);

  out.statistic =
      std::max(std::abs(cogram_ok - 1.0), std::abs(sv_ok - 1.0));
  const double min_gap = get_double(spec, "min_uncorrected_gap", 0.1);
  const bool printed_off = std::abs(cogram_printed - 1.0) > min_gap &&
                           std::abs(sv_printed - 1.0) > min_gap;
  out.pass = out.statistic < spec.threshold && printed_off;
  out.details = {
      {"beta2_cogram",
       {{"m", cogram.m}, {"n", 1}, {"nu", cogram.nu},
        {"corrected_mass", cogram_ok}, {"uncorrected_mass", cogram_printed}}},
      {"sv_matric_t",
       {{"m", 1}, {"n", sv_n}, {"nu", sv_nu},
        {"corrected_mass", sv_ok}, {"uncorrected_mass", sv_printed}}},
      {"min_uncorrected_gap", min_gap}};
  return out;
}

//----------------------------------------------------------------------
// Stochastic comparisons.

Outcome matric_t_constructions(const CheckSpec& spec, RngStream& rng) {
  const AlgebraTag tag = get_tag(spec, 1);
  const auto m = static_cast<Index>(get_int(spec, "m", 2));
  const auto n = static_cast<Index>(get_int(spec, "n", 3));
  const double nu = get_double(spec, "nu", tag.beta() <= 2 ? 5.0 : 9.0);
  const Index count = sample_size(spec);
  const auto p = MatricTParams::standard(tag, m, n, nu);
  std::vector<std::vector<double>> a;
  std::vector<std::vector<double>> b;
  a.reserve(count);
  b.reserve(count);
  for (Index i = 0; i < count; ++i) {
    a.push_back(singular_values(sample_matric_t(rng, p, MatricTMethod::wishart_root)));
  }
  for (Index i = 0; i < count; ++i) {
    b.push_back(singular_values(sample_matric_t(rng, p, MatricTMethod::inverse_root)));
  }
  Outcome out = compare_spectra(a, b, spec.threshold);
  out.details.update({{"beta", tag.beta()}, {"m", m}, {"n", n}, {"nu", nu},
                      {"n_samples", count}});
  return out;
}

HermitianPD default_wishart_scale(const CheckSpec& spec, AlgebraTag tag,
                                  Index m) {
  if (spec.params.contains("Xi")) {
    return HermitianPD(matrix_from_json(spec.params.at("Xi")));
  }
  if (m == 2) {
    const double v[] = {2.0, 0.5, 0.5, 1.0};
    return HermitianPD(DivMatrix::from_real(tag, 2, 2, v));
  }
  return HermitianPD::identity(tag, m);
}

Outcome wishart_constructions(const CheckSpec& spec, RngStream& rng) {
  const AlgebraTag tag = get_tag(spec, 1);
  const auto m = static_cast<Index>(get_int(spec, "m", 2));
  const double nu = get_double(spec, "nu", 6.0);
  const Index count = sample_size(spec);
  const WishartParams p{tag, m, nu, default_wishart_scale(spec, tag, m)};
  std::vector<std::vector<double>> a;
  std::vector<std::vector<double>> b;
  for (Index i = 0; i < count; ++i) {
    a.push_back({hermitian_eigenvalues(sample_wishart(rng, p, WishartMethod::bartlett)).front()});
  }
  for (Index i = 0; i < count; ++i) {
    b.push_back({hermitian_eigenvalues(sample_wishart(rng, p, WishartMethod::gram)).front()});
  }
  Outcome out = compare_spectra(a, b, spec.threshold);
  out.details.update({{"beta", tag.beta()}, {"m", m}, {"nu", nu},
                      {"statistic_of", "largest eigenvalue"},
                      {"n_samples", count}});
  return out;
}

Outcome elliptical_invariance(const CheckSpec& spec, RngStream& rng) {
  const AlgebraTag tag = get_tag(spec, 1);
  const auto m = static_cast<Index>(get_int(spec, "m", 2));
  const auto n = static_cast<Index>(get_int(spec, "n", 3));
  const int nu = get_int(spec, "nu", 4);
  const Index count = sample_size(spec);
  const ScaleMixtureSpec mix =
      spec.params.contains("mixture")
          ? mixture_from_json(spec.params.at("mixture"))
          : ScaleMixtureSpec{{0.7, 0.3}, {1.0, 3.0}};
  const auto p = MatricTParams::standard(tag, m, n, nu);
  std::vector<std::vector<double>> a;
  std::vector<std::vector<double>> b;
  for (Index i = 0; i < count; ++i) {
    a.push_back(singular_values(sample_elliptical_t(rng, tag, m, n, nu, mix)));
  }
  for (Index i = 0; i < count; ++i) {
    b.push_back(singular_values(sample_matric_t(rng, p)));
  }
  Outcome out = compare_spectra(a, b, spec.threshold);
  out.details.update({{"beta", tag.beta()}, {"m", m}, {"n", n}, {"nu", nu},
                      {"mixture", to_json(mix)}, {"n_samples", count}});
  return out;
}

Outcome cauchy_matric_t(const CheckSpec& spec, RngStream& rng) {
  const auto p = MatricTParams::standard(AlgebraTag::real(), 1, 1, 1.0);
  std::vector<double> x(sample_size(spec));
  for (double& v : x) v = sample_matric_t(rng, p).entry(0, 0)[0];
  return one_sample(
      std::move(x),
      [](double t) { return 0.5 + std::atan(t) / std::numbers::pi; },
      spec.threshold);
}

Outcome beta_prime(const CheckSpec& spec, RngStream& rng) {
  const AlgebraTag tag = get_tag(spec, 1);
  const double nu = get_double(spec, "nu", 3.0);
  const BetaIIParams p{tag, 1, 1, nu, Orientation::gram, std::nullopt};
  std::vector<double> x(sample_size(spec));
  for (double& v : x) v = sample_beta2_matric(rng, p).mat().entry(0, 0)[0];
  const double a = tag.beta() / 2.0;
  const double b = tag.beta() * nu / 2.0;
  Outcome out = one_sample(
      std::move(x),
      [a, b](double f) {
        return f <= 0.0 ? 0.0 : boost::math::ibeta(a, b, f / (1.0 + f));
      },
      spec.threshold);
  out.details.update({{"beta", tag.beta()}, {"nu", nu}});
  return out;
}

Outcome matrix_mt_scalar(const CheckSpec& spec, RngStream& rng) {
  const AlgebraTag tag = get_tag(spec, 1);
  const double nu = get_double(spec, "nu", 3.0);
  const double rho = get_double(spec, "rho", 2.0);
  const auto p = MatrixMTParams::standard(tag, 1, 1, nu, rho);
  const int beta = tag.beta();
  // Law of |T|: sphere area times r^(beta-1) times the density.
  const NumericCdf norm_cdf(
      [&](double r) {
        return log_sphere(beta) + (beta - 1) * std::log(r) +
               logpdf_matrix_mt_row(tag, 1, nu, rho, r * r);
      },
      -12.0, 12.0, 800);
  std::vector<double> x(sample_size(spec));
  for (double& v : x) {
    const DivMatrix t = sample_matrix_mt(rng, p);
    v = beta == 1 ? t.entry(0, 0)[0] : t.frobenius_norm();
  }
  Outcome out;
  if (beta == 1) {
    out = one_sample(
        std::move(x),
        [&](double t) {
          const double h = 0.5 * norm_cdf(std::abs(t));
          return t < 0.0 ? 0.5 - h : 0.5 + h;
        },
        spec.threshold);
  } else {
    out = one_sample(std::move(x), norm_cdf, spec.threshold);
  }
  out.details.update({{"beta", beta},
                      {"nu", nu},
                      {"rho", rho},
                      {"cdf_mass", norm_cdf.total_mass()}});
  return out;
}

Outcome lambda_max(const CheckSpec& spec, RngStream& rng) {
  const AlgebraTag tag = get_tag(spec, 1);
  const int m = 2;
  const int n = get_int(spec, "n", 3);
  const double nu = get_double(spec, "nu", 4.0);
  QuadratureOptions inner;
  inner.abs_tol = 1e-13;
  inner.rel_tol = 1e-11;
  // Marginal of the larger eigenvalue: integrate the joint density over
  // the smaller one in log scale.
  const auto log_marginal = [&](double y) {
    const auto h = [&](double v) {
      const double z = std::exp(v);
      if (!(z < y)) return 0.0;
      try {
        return std::exp(v + log_joint_eig_beta2(
                                tag, m, n, nu,
                                SpectrumSample({y, z}, SpectrumKind::eigen)));
      } catch (const OrderingError&) {
        return 0.0;
      }
    };
    const double mass = integrate_line(h, -kInf, std::log(y), inner).value;
    return mass > 0.0 ? std::log(mass) : -kInf;
  };
  const NumericCdf cdf(log_marginal, -8.0, 12.0, 500);
  const BetaIIParams p{tag, static_cast<Index>(m), static_cast<Index>(n), nu,
                       Orientation::gram, std::nullopt};
  std::vector<double> x(sample_size(spec));
  for (double& v : x) v = hermitian_eigenvalues(sample_beta2_matric(rng, p)).front();
  Outcome out = one_sample(std::move(x), cdf, spec.threshold);
  out.details.update({{"beta", tag.beta()},
                      {"m", m},
                      {"n", n},
                      {"nu", nu},
                      {"marginal_mass", cdf.total_mass()}});
  return out;
}

//----------------------------------------------------------------------
// Moments.

Outcome from_moments(const std::vector<std::pair<std::string, MomentResult>>& r,
                     double threshold) {
  Outcome out;
  Json rows = Json::array();
  bool pass = true;
  for (const auto& [label, m] : r) {
    out.statistic = std::max(out.statistic, std::abs(m.z));
    pass = pass && m.pass;
    rows.push_back({{"quantity", label},
                    {"mean", m.mean},
                    {"standard_error", m.standard_error},
                    {"z", m.z}});
  }
  out.pass = pass && out.statistic <= threshold;
  out.details = {{"moments", rows}};
  return out;
}

Outcome wishart_mean(const CheckSpec& spec, RngStream& rng) {
  const AlgebraTag tag = get_tag(spec, 1);
  const auto m = static_cast<Index>(get_int(spec, "m", 2));
  const double nu = get_double(spec, "nu", 6.0);
  const WishartParams p{tag, m, nu, default_wishart_scale(spec, tag, m)};
  std::vector<DivMatrix> draws;
  const Index count = sample_size(spec);
  draws.reserve(count);
  for (Index i = 0; i < count; ++i) {
    draws.push_back(sample_wishart(rng, p, WishartMethod::bartlett).mat());
  }
  std::vector<std::pair<std::string, MomentResult>> results;
  for (Index i = 0; i < m; ++i) {
    for (Index j = i; j < m; ++j) {
      const int coeffs = i == j ? 1 : tag.beta();
      for (int c = 0; c < coeffs; ++c) {
        const double expected = nu * p.Xi.mat().entry(i, j)[c];
        results.emplace_back(
            "V[" + std::to_string(i) + "," + std::to_string(j) + "][" +
                std::to_string(c) + "]",
            moment_check(
                draws,
                [&](const DivMatrix& v) { return v.entry(i, j)[c]; },
                expected, spec.threshold));
      }
    }
  }
  Outcome out = from_moments(results, spec.threshold);
  out.details.update({{"beta", tag.beta()}, {"m", m}, {"nu", nu},
                      {"Xi", matrix_to_json(p.Xi.mat())}, {"n_samples", count}});
  return out;
}

Outcome gamma_mean(const CheckSpec& spec, RngStream& rng) {
  const GammaScalarParams p{get_tag(spec, 2), get_double(spec, "nu", 3.0),
                            get_double(spec, "rho", 1.5)};
  std::vector<double> x(sample_size(spec));
  for (double& v : x) v = sample_gamma_scalar(rng, p);
  Outcome out = from_moments(
      {{"S", moment_check(std::span<const double>(x), p.nu * p.rho,
                          spec.threshold)}},
      spec.threshold);
  out.details.update({{"beta", p.tag.beta()}, {"nu", p.nu}, {"rho", p.rho}});
  return out;
}

Outcome gaussian_norm(const CheckSpec& spec, RngStream& rng) {
  const AlgebraTag tag = get_tag(spec, 4);
  const auto m = static_cast<Index>(get_int(spec, "m", 2));
  const auto n = static_cast<Index>(get_int(spec, "n", 3));
  std::vector<double> x(sample_size(spec));
  for (double& v : x) {
    const double f = sample_gaussian(rng, tag, m, n).frobenius_norm();
    v = f * f;
  }
  Outcome out = from_moments(
      {{"|Y|^2", moment_check(std::span<const double>(x),
                              static_cast<double>(m * n), spec.threshold)}},
      spec.threshold);
  out.details.update({{"beta", tag.beta()}, {"m", m}, {"n", n}});
  return out;
}

const std::map<std::string, Target>& registry() {
  static const std::map<std::string, Target> targets = {
      {"gamma_ratio", {CheckKind::identity, false, gamma_ratio}},
      {"form_equivalence", {CheckKind::identity, false, form_equivalence}},
      {"scalar_families", {CheckKind::normalization, false, scalar_families}},
      {"eigen_2d", {CheckKind::normalization, false, eigen_2d}},
      {"uncorrected_variants",
       {CheckKind::normalization, false, uncorrected_variants}},
      {"matric_t_constructions", {CheckKind::ks2, true, matric_t_constructions}},
      {"wishart_constructions", {CheckKind::ks2, true, wishart_constructions}},
      {"elliptical_invariance", {CheckKind::ks2, true, elliptical_invariance}},
      {"cauchy_matric_t", {CheckKind::ks1, true, cauchy_matric_t}},
      {"beta_prime", {CheckKind::ks1, true, beta_prime}},
      {"matrix_mt_scalar", {CheckKind::ks1, true, matrix_mt_scalar}},
      {"lambda_max", {CheckKind::ks1, true, lambda_max}},
      {"wishart_mean", {CheckKind::moment, true, wishart_mean}},
      {"gamma_mean", {CheckKind::moment, true, gamma_mean}},
      {"gaussian_norm", {CheckKind::moment, true, gaussian_norm}},
  };
  return targets;
}

const Target& target_of(const CheckSpec& spec) {
  if (!spec.params.is_object() || !spec.params.contains("target") ||
      !spec.params.at("target").is_string()) {
    throw FormatError("check \"" + spec.name + "\": params.target missing");
  }
  const auto name = spec.params.at("target").get<std::string>();
  const auto it = registry().find(name);
  if (it == registry().end()) {
    throw FormatError("check \"" + spec.name + "\": unknown target \"" + name +
                      "\"");
  }
  if (it->second.kind != spec.kind) {
    throw FormatError("check \"" + spec.name + "\": target \"" + name +
                      "\" has kind " + to_string(it->second.kind));
  }
  return it->second;
}

constexpr std::uint64_t kRerunOffset = std::uint64_t{1} << 32;

}  // namespace

const char* to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::normalization:
      return "normalization";
    case CheckKind::ks1:
      return "ks1";
    case CheckKind::ks2:
      return "ks2";
    case CheckKind::moment:
      return "moment";
    case CheckKind::identity:
      return "identity";
  }
  return "identity";
}

CheckKind check_kind_from_string(const std::string& s) {
  for (CheckKind k : {CheckKind::normalization, CheckKind::ks1, CheckKind::ks2,
                      CheckKind::moment, CheckKind::identity}) {
    if (s == to_string(k)) return k;
  }
  throw FormatError("unknown check kind \"" + s + "\"");
}

void CheckSpec::validate() const {
  if (name.empty()) throw DomainError("check name must not be empty");
  const bool ks = kind == CheckKind::ks1 || kind == CheckKind::ks2;
  if (ks && !(threshold > 0.0 && threshold < 1.0)) {
    throw DomainError("check \"" + name + "\": p threshold must be in (0, 1)");
  }
  if (!ks && !(threshold > 0.0)) {
    throw DomainError("check \"" + name + "\": tolerance must be positive");
  }
  if (!(budget > 0.0) || !std::isfinite(budget)) {
    throw DomainError("check \"" + name + "\": budget must be positive");
  }
  if ((ks || kind == CheckKind::moment) && budget < 100.0) {
    throw DomainError("check \"" + name + "\": need at least 100 samples");
  }
  target_of(*this);
}

CheckResult run_check(const CheckSpec& spec, std::uint64_t seed,
                      std::uint64_t index) {
  CheckResult result;
  result.name = spec.name;
  result.kind = spec.kind;
  result.threshold = spec.threshold;
  const auto start = std::chrono::steady_clock::now();
  try {
    spec.validate();
    const Target& target = target_of(spec);
    RngStream rng(seed, index);
    Outcome out = target.run(spec, rng);
    if (!out.pass && target.stochastic) {
      RngStream again(seed, index + kRerunOffset);
      Outcome second = target.run(spec, again);
      second.details["first_attempt"] = {{"statistic", out.statistic},
                                         {"details", out.details}};
      out = std::move(second);
      result.attempts = 2;
    }
    result.statistic = out.statistic;
    result.pass = out.pass;
    result.details = std::move(out.details);
  } catch (const std::exception& e) {
    result.pass = false;
    result.statistic = std::numeric_limits<double>::quiet_NaN();
    result.details = {{"error", e.what()}};
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

VerifyReport run_suite(const std::vector<CheckSpec>& config, std::uint64_t seed,
                       const SuiteOptions& opts) {
  VerifyReport report;
  report.seed = seed;
  report.version = kVersion;
  report.checks.resize(config.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < config.size(); i = next++) {
      report.checks[i] = run_check(config[i], seed, i);
    }
  };
  const int jobs =
      std::max(1, std::min<int>(opts.jobs, static_cast<int>(config.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  std::stable_sort(report.checks.begin(), report.checks.end(),
                   [](const CheckResult& a, const CheckResult& b) {
                     return a.name < b.name;
                   });
  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CheckResult& c) { return c.pass; });
  return report;
}

Json to_json(const CheckSpec& spec) {
  return Json{{"name", spec.name},
              {"kind", to_string(spec.kind)},
              {"params", spec.params},
              {"budget", spec.budget},
              {"threshold", spec.threshold}};
}

CheckSpec check_spec_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("check: expected an object");
  const auto str = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
      throw FormatError(std::string("check: missing string field \"") + key +
                        "\"");
    }
    return j.at(key).get<std::string>();
  };
  const auto num = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
      throw FormatError(std::string("check: missing numeric field \"") + key +
                        "\"");
    }
    return j.at(key).get<double>();
  };
  CheckSpec spec;
  spec.name = str("name");
  spec.kind = check_kind_from_string(str("kind"));
  spec.params = j.value("params", Json::object());
  spec.budget = num("budget");
  spec.threshold = num("threshold");
  try {
    spec.validate();
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
  return spec;
}

std::vector<CheckSpec> suite_from_json(const Json& j) {
  const Json& list = j.is_object() && j.contains("checks") ? j.at("checks") : j;
  if (!list.is_array()) {
    throw FormatError("suite: expected an array of checks or {\"checks\": [...]}");
  }
  std::vector<CheckSpec> out;
  for (const Json& c : list) out.push_back(check_spec_from_json(c));
  return out;
}

Json to_json(const VerifyReport& report, bool include_timings) {
  Json checks = Json::array();
  for (const CheckResult& c : report.checks) {
    Json jc{{"name", c.name},
            {"kind", to_string(c.kind)},
            {"statistic", c.statistic},
            {"threshold", c.threshold},
            {"pass", c.pass},
            {"attempts", c.attempts},
            {"details", c.details}};
    if (include_timings) jc["wall_seconds"] = c.wall_seconds;
    checks.push_back(std::move(jc));
  }
  return Json{{"version", report.version},
              {"seed", report.seed},
              {"pass", report.pass},
              {"checks", std::move(checks)}};
}

std::vector<CheckSpec> default_suite() {
  const auto spec = [](std::string name, CheckKind kind, Json params,
                       double budget, double threshold) {
    return CheckSpec{std::move(name), kind, std::move(params), budget,
                     threshold};
  };
  constexpr double kP = 0.005;
  return {
      spec("identity.form_equivalence", CheckKind::identity,
           {{"target", "form_equivalence"}}, 100, 1e-9),
      spec("identity.gamma_ratio", CheckKind::identity,
           {{"target", "gamma_ratio"}}, 200, 1e-10),
      spec("ks1.beta_prime", CheckKind::ks1, {{"target", "beta_prime"}}, 5e4, kP),
      spec("ks1.cauchy", CheckKind::ks1, {{"target", "cauchy_matric_t"}}, 5e4,
           kP),
      spec("ks1.lambda_max", CheckKind::ks1, {{"target", "lambda_max"}}, 2e4,
           kP),
      spec("ks1.matrix_mt_scalar", CheckKind::ks1,
           {{"target", "matrix_mt_scalar"}}, 5e4, kP),
      spec("ks2.elliptical_invariance.beta1", CheckKind::ks2,
           {{"target", "elliptical_invariance"}, {"beta", 1}}, 2e4, kP),
      spec("ks2.elliptical_invariance.beta2", CheckKind::ks2,
           {{"target", "elliptical_invariance"}, {"beta", 2}}, 2e4, kP),
      spec("ks2.matric_t_constructions.beta1", CheckKind::ks2,
           {{"target", "matric_t_constructions"}, {"beta", 1}}, 2e4, kP),
      spec("ks2.matric_t_constructions.beta2", CheckKind::ks2,
           {{"target", "matric_t_constructions"}, {"beta", 2}}, 2e4, kP),
      spec("ks2.matric_t_constructions.beta4", CheckKind::ks2,
           {{"target", "matric_t_constructions"}, {"beta", 4}}, 2e4, kP),
      spec("ks2.wishart_constructions", CheckKind::ks2,
           {{"target", "wishart_constructions"}}, 2e4, kP),
      spec("moment.gamma_mean", CheckKind::moment, {{"target", "gamma_mean"}},
           2e4, 3.0),
      spec("moment.gaussian_norm", CheckKind::moment,
           {{"target", "gaussian_norm"}}, 2e4, 3.0),
      spec("moment.wishart_mean", CheckKind::moment,
           {{"target", "wishart_mean"}}, 2e4, 3.0),
      spec("normalization.eigen_2d", CheckKind::normalization,
           {{"target", "eigen_2d"}}, 1e-8, 1e-4),
      spec("normalization.scalar_families", CheckKind::normalization,
           {{"target", "scalar_families"}}, 1e-10, 1e-6),
      spec("normalization.uncorrected_variants", CheckKind::normalization,
           {{"target", "uncorrected_variants"}}, 1e-10, 1e-6),
  };
}

std::vector<std::string> check_targets() {
  std::vector<std::string> out;
  for (const auto& [name, t] : registry()) out.push_back(name);
  return out;
}

}  // namespace rdmt
