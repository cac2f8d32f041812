#include "rdmt/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "rdmt/special.hpp"

namespace rdmt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLogPi = std::log(std::numbers::pi);

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

void require_octonion_scalar(AlgebraTag tag, Index m, Index n,
                             const char* what) {
  if (tag.beta() == 8 && (m > 1 || n > 1)) {
    throw Unsupported(std::string(what) +
                      ": octonion matrices are limited to m = n = 1");
  }
}

void require_shape(const DivMatrix& x, AlgebraTag tag, Index rows, Index cols,
                   const char* what) {
  if (x.tag() != tag || x.rows() != rows || x.cols() != cols) {
    throw DimensionMismatch(std::string(what) + ": expected " +
                            std::to_string(rows) + "x" + std::to_string(cols) +
                            " matrix over beta = " +
                            std::to_string(tag.beta()));
  }
}

void require_size(const HermitianPD& x, AlgebraTag tag, Index n,
                  const char* what) {
  if (x.tag() != tag || x.size() != n) {
    throw DimensionMismatch(std::string(what) + ": expected " +
                            std::to_string(n) + "x" + std::to_string(n) +
                            " Hermitian matrix");
  }
}

double real_trace(const DivMatrix& a) {
  double acc = 0.0;
  for (Index i = 0; i < a.rows(); ++i) acc += a.entry(i, i)[0];
  return acc;
}

DivMatrix gram(const DivMatrix& x) { return matmul(x, conj_transpose(x)); }
DivMatrix cogram(const DivMatrix& x) { return matmul(conj_transpose(x), x); }

// log|F| of a Hermitian positive semidefinite F: -inf on the boundary of the
// cone, NotPositiveDefinite if F is indefinite.
double cone_logdet(const DivMatrix& f) {
  try {
    return HermitianPD(f).logdet();
  } catch (const NotPositiveDefinite&) {
    const auto ev = hermitian_eigenvalues(f);
    const double scale = std::max(1.0, std::abs(ev.front()));
    if (ev.back() < -1e-10 * scale) {
      throw NotPositiveDefinite("matrix is not positive semidefinite");
    }
    return kNegInf;
  }
}

// exponent * log|F| with the conventions 0 * (-inf) = 0 and a divergent
// power reported as an error.
double power_of_det(double exponent, double logdet) {
  if (std::isfinite(logdet)) return exponent * logdet;
  if (exponent > 0.0) return kNegInf;
  if (exponent == 0.0) return 0.0;
  throw DomainError("density diverges on the boundary of the cone");
}

double matric_t_log_constant(AlgebraTag tag, Index m, Index n, double nu) {
  const double b = tag.beta();
  const auto mi = static_cast<int>(m);
  return log_mvgamma(tag, mi, b * (n + nu) / 2.0) -
         m * n * b / 2.0 * kLogPi - log_mvgamma(tag, mi, b * nu / 2.0);
}

double matrix_mt_log_constant(AlgebraTag tag, Index m, Index n, double nu,
                              double rho) {
  const double b = tag.beta();
  const double mn = static_cast<double>(m * n);
  return log_gamma(b * (nu + mn) / 2.0) + b * mn / 2.0 * std::log(rho) -
         b * mn / 2.0 * kLogPi - log_gamma(b * nu / 2.0);
}

// Shapes after the substitution m -> n, n -> m, nu -> nu + n - m for the
// cogram orientation of the matricvariate beta II law.
struct BetaShape {
  int k;      // side of F
  double l;   // the other dimension
  double nu;  // effective degrees of freedom
};

BetaShape matric_beta_shape(const BetaIIParams& p) {
  if (p.orientation == Orientation::gram) {
    return {static_cast<int>(p.m), static_cast<double>(p.n), p.nu};
  }
  return {static_cast<int>(p.n), static_cast<double>(p.m),
          p.nu + static_cast<double>(p.n) - static_cast<double>(p.m)};
}

}  // namespace

//----------------------------------------------------------------------
MatricTParams MatricTParams::standard(AlgebraTag tag, Index m, Index n,
                                      double nu) {
  return MatricTParams{tag,
                       m,
                       n,
                       nu,
                       DivMatrix(tag, m, n),
                       HermitianPD::identity(tag, m),
                       HermitianPD::identity(tag, n)};
}

void MatricTParams::validate() const {
  require(m >= 1 && n >= 1, "matricvariate T: m and n must be positive");
  require_octonion_scalar(tag, m, n, "matricvariate T");
  require(std::isfinite(nu) && nu > tag.beta() * (static_cast<double>(m) - 1.0),
          "matricvariate T: need nu > beta (m - 1)");
  require_shape(mu, tag, m, n, "matricvariate T mu");
  require_size(Xi, tag, m, "matricvariate T Xi");
  require_size(Sigma, tag, n, "matricvariate T Sigma");
}

MatrixMTParams MatrixMTParams::standard(AlgebraTag tag, Index m, Index n,
                                        double nu, double rho) {
  return MatrixMTParams{tag,
                        m,
                        n,
                        nu,
                        rho,
                        DivMatrix(tag, m, n),
                        HermitianPD::identity(tag, m),
                        HermitianPD::identity(tag, n)};
}

void MatrixMTParams::validate() const {
  require(m >= 1 && n >= 1, "matrix multivariate T: m and n must be positive");
  require_octonion_scalar(tag, m, n, "matrix multivariate T");
  require(std::isfinite(nu) && nu > 0.0, "matrix multivariate T: need nu > 0");
  require(std::isfinite(rho) && rho > 0.0,
          "matrix multivariate T: need rho > 0");
  require_shape(mu, tag, m, n, "matrix multivariate T mu");
  require_size(Delta, tag, m, "matrix multivariate T Delta");
  require_size(Lambda, tag, n, "matrix multivariate T Lambda");
}

WishartParams WishartParams::standard(AlgebraTag tag, Index m, double nu) {
  return WishartParams{tag, m, nu, HermitianPD::identity(tag, m)};
}

void WishartParams::validate() const {
  require(m >= 1, "Wishart: m must be positive");
  require_octonion_scalar(tag, m, m, "Wishart");
  require(std::isfinite(nu) && nu > tag.beta() * (static_cast<double>(m) - 1.0),
          "Wishart: need nu > beta (m - 1)");
  require_size(Xi, tag, m, "Wishart Xi");
}

void GammaScalarParams::validate() const {
  require(std::isfinite(nu) && nu > 0.0, "gamma: need nu > 0");
  require(std::isfinite(rho) && rho > 0.0, "gamma: need rho > 0");
}

void BetaIIParams::validate() const {
  require(m >= 1 && n >= 1, "beta II: m and n must be positive");
  require(std::isfinite(nu) && nu > 0.0, "beta II: need nu > 0");
  if (orientation == Orientation::gram) {
    require(n >= m, "beta II (F = T T*): need n >= m");
  } else {
    require(n < m, "beta II (F = T* T): need n < m");
  }
  require_octonion_scalar(tag, dim(), dim(), "beta II");
  if (scale) require_size(*scale, tag, dim(), "beta II scale");
}

void ScaleMixtureSpec::validate() const {
  require(!weights.empty() && weights.size() == scales.size(),
          "scale mixture: weights and scales must be non-empty and the same "
          "length");
  double total = 0.0;
  for (double w : weights) {
    require(std::isfinite(w) && w >= 0.0, "scale mixture: negative weight");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-12, "scale mixture: weights must sum to 1");
  for (double s : scales) {
    require(std::isfinite(s) && s > 0.0, "scale mixture: scales must be > 0");
  }
}

//----------------------------------------------------------------------
DivMatrix sample_gaussian(RngStream& rng, AlgebraTag tag, Index m, Index n) {
  require_octonion_scalar(tag, m, n, "sample_gaussian");
  DivMatrix y(tag, m, n);
  const double sd = 1.0 / std::sqrt(static_cast<double>(tag.beta()));
  for (double& c : y.raw()) c = sd * rng.normal();
  return y;
}

DivMatrix sample_gaussian(RngStream& rng, AlgebraTag tag, Index m, Index n,
                          const HermitianPD& Sigma) {
  require_size(Sigma, tag, n, "sample_gaussian Sigma");
  DivMatrix y0 = sample_gaussian(rng, tag, m, n);
  return matmul(y0, conj_transpose(Sigma.chol()));
}

double sample_gamma_scalar(RngStream& rng, const GammaScalarParams& params) {
  params.validate();
  const double b = params.tag.beta();
  return rng.gamma(b * params.nu / 2.0, 2.0 * params.rho / b);
}

DivMatrix sample_wishart_root(RngStream& rng, const WishartParams& params) {
  params.validate();
  const AlgebraTag tag = params.tag;
  const double b = tag.beta();
  const double sd = 1.0 / std::sqrt(b);
  DivMatrix bartlett(tag, params.m, params.m);
  for (Index i = 0; i < params.m; ++i) {
    const double shape = b * (params.nu - static_cast<double>(i)) / 2.0;
    bartlett.entry(i, i)[0] = std::sqrt(rng.gamma(shape, 2.0 / b));
    for (Index j = 0; j < i; ++j) {
      for (double& c : bartlett.entry(i, j)) c = sd * rng.normal();
    }
  }
  return matmul(params.Xi.chol(), bartlett);
}

HermitianPD sample_wishart(RngStream& rng, const WishartParams& params,
                           WishartMethod method) {
  params.validate();
  if (method == WishartMethod::bartlett) {
    return HermitianPD(gram(sample_wishart_root(rng, params)));
  }
  const double rounded = std::round(params.nu);
  if (rounded != params.nu || params.nu < static_cast<double>(params.m)) {
    throw DomainError(
        "Wishart gram construction needs integer nu >= m (got nu = " +
        std::to_string(params.nu) + ")");
  }
  const DivMatrix y = sample_gaussian(rng, params.tag, params.m,
                                      static_cast<Index>(rounded));
  const DivMatrix ly = matmul(params.Xi.chol(), y);
  return HermitianPD(gram(ly));
}

DivMatrix sample_matric_t(RngStream& rng, const MatricTParams& params,
                          MatricTMethod method) {
  params.validate();
  const AlgebraTag tag = params.tag;
  if (method == MatricTMethod::wishart_root) {
    const WishartParams wp{tag, params.m, params.nu, params.Xi};
    const DivMatrix l = sample_wishart_root(rng, wp);
    const DivMatrix y = sample_gaussian(rng, tag, params.m, params.n,
                                        params.Sigma);
    return matmul(inverse_lower(l), y) + params.mu;
  }
  const double nu_u = params.nu + static_cast<double>(params.n) -
                      static_cast<double>(params.m);
  const WishartParams up{tag, params.n, nu_u, params.Sigma.inverse()};
  const DivMatrix l1 = sample_wishart_root(rng, up);
  const DivMatrix x0 = sample_gaussian(rng, tag, params.m, params.n);
  // (L_Xi^{-1})* is a square root of Xi^{-1}.
  const DivMatrix x =
      matmul(conj_transpose(inverse_lower(params.Xi.chol())), x0);
  return matmul(x, inverse_lower(l1)) + params.mu;
}

HermitianPD sample_beta2_matric(RngStream& rng, const BetaIIParams& params) {
  params.validate();
  const auto tp = MatricTParams::standard(params.tag, params.m, params.n,
                                          params.nu);
  const DivMatrix t = sample_matric_t(rng, tp);
  DivMatrix f = params.orientation == Orientation::gram ? gram(t) : cogram(t);
  if (params.scale) {
    const DivMatrix& m = params.scale->chol();
    f = matmul(matmul(m, f), conj_transpose(m));
  }
  return HermitianPD(f);
}

DivMatrix sample_matrix_mt(RngStream& rng, const MatrixMTParams& params) {
  params.validate();
  const double s =
      sample_gamma_scalar(rng, {params.tag, params.nu, params.rho});
  const DivMatrix t1 =
      sample_gaussian(rng, params.tag, params.m, params.n) * (1.0 / std::sqrt(s));
  const DivMatrix left = conj_transpose(inverse_lower(params.Delta.chol()));
  const DivMatrix right = inverse_lower(params.Lambda.chol());
  return matmul(matmul(left, t1), right) + params.mu;
}

HermitianPD sample_beta2_multivariate(RngStream& rng,
                                      const BetaIIParams& params) {
  params.validate();
  const auto tp =
      MatrixMTParams::standard(params.tag, params.m, params.n, params.nu, 1.0);
  const DivMatrix t1 = sample_matrix_mt(rng, tp);
  DivMatrix f = params.orientation == Orientation::gram ? gram(t1) : cogram(t1);
  if (params.scale) {
    const DivMatrix k = conj_transpose(inverse_lower(params.scale->chol()));
    f = matmul(matmul(k, f), conj_transpose(k));
  }
  return HermitianPD(f);
}

DivMatrix sample_elliptical_t(RngStream& rng, AlgebraTag tag, Index m, Index n,
                              int nu, const ScaleMixtureSpec& mix) {
  mix.validate();
  if (tag.beta() == 8) {
    throw Unsupported("sample_elliptical_t: octonion matrices not supported");
  }
  require(m >= 1 && n >= 1, "sample_elliptical_t: m and n must be positive");
  require(nu >= static_cast<int>(m),
          "sample_elliptical_t: need integer nu >= m");

  double scale = mix.scales.front();
  if (mix.weights.size() > 1) {
    const double u = rng.uniform();
    double cum = 0.0;
    scale = mix.scales.back();
    for (std::size_t k = 0; k < mix.weights.size(); ++k) {
      cum += mix.weights[k];
      if (u < cum) {
        scale = mix.scales[k];
        break;
      }
    }
  }
  const DivMatrix y1 = sample_gaussian(rng, tag, m, n) * scale;
  const DivMatrix y2 =
      sample_gaussian(rng, tag, m, static_cast<Index>(nu)) * scale;
  const DivMatrix l = cholesky_lower(gram(y2));
  return matmul(inverse_lower(l), y1);
}

//----------------------------------------------------------------------
double logpdf_matric_t(const MatricTParams& params, const DivMatrix& t,
                       DensityForm form) {
  params.validate();
  require_shape(t, params.tag, params.m, params.n, "logpdf_matric_t");
  const AlgebraTag tag = params.tag;
  const double b = tag.beta();
  const double m = static_cast<double>(params.m);
  const double n = static_cast<double>(params.n);
  const double nu = params.nu;
  const DivMatrix d = t - params.mu;

  if (form == DensityForm::primal) {
    // D Sigma^{-1} D* = W W* with W = D (L_Sigma^{-1})*.
    const DivMatrix w =
        matmul(d, conj_transpose(inverse_lower(params.Sigma.chol())));
    const HermitianPD a(params.Xi.inverse().mat() + gram(w));
    return matric_t_log_constant(tag, params.m, params.n, nu) -
           b * nu / 2.0 * params.Xi.logdet() - b * m / 2.0 * params.Sigma.logdet() -
           b * (n + nu) / 2.0 * a.logdet();
  }
  // D* Xi D = U* U with U = L_Xi* D.
  const DivMatrix u = matmul(conj_transpose(params.Xi.chol()), d);
  const HermitianPD a(params.Sigma.mat() + cogram(u));
  const auto ni = static_cast<int>(params.n);
  return log_mvgamma(tag, ni, b * (n + nu) / 2.0) -
         log_mvgamma(tag, ni, b * (n + nu - m) / 2.0) - m * n * b / 2.0 * kLogPi +
         b * n / 2.0 * params.Xi.logdet() +
         b * (n + nu - m) / 2.0 * params.Sigma.logdet() -
         b * (n + nu) / 2.0 * a.logdet();
}

double logpdf_matric_t_row(AlgebraTag tag, Index n, double nu, double r2) {
  require(n >= 1 && nu > 0.0, "logpdf_matric_t_row: need n >= 1, nu > 0");
  require(r2 >= 0.0, "logpdf_matric_t_row: squared norm must be >= 0");
  const double b = tag.beta();
  return matric_t_log_constant(tag, 1, n, nu) -
         b * (static_cast<double>(n) + nu) / 2.0 * std::log1p(r2);
}

double logpdf_beta2_matric(const BetaIIParams& params, const DivMatrix& f) {
  params.validate();
  const Index k = params.dim();
  require_shape(f, params.tag, k, k, "logpdf_beta2_matric");
  const AlgebraTag tag = params.tag;
  const double b = tag.beta();
  const BetaShape s = matric_beta_shape(params);
  const double det_power = b * (s.l - s.k + 1.0) / 2.0 - 1.0;
  const double kernel_power = b * (s.l + s.nu) / 2.0;

  double value = -log_mvbeta(tag, s.k, b * s.nu / 2.0, b * s.l / 2.0) +
                 power_of_det(det_power, cone_logdet(f));
  if (params.scale) {
    value += b * s.nu / 2.0 * params.scale->logdet();
    value -= kernel_power * HermitianPD(params.scale->mat() + f).logdet();
  } else {
    value -= kernel_power *
             HermitianPD(DivMatrix::identity(tag, k) + f).logdet();
  }
  return value;
}

double logpdf_beta2_matric(const BetaIIParams& params, const HermitianPD& f) {
  return logpdf_beta2_matric(params, f.mat());
}

double logpdf_matrix_mt(const MatrixMTParams& params, const DivMatrix& t1) {
  params.validate();
  require_shape(t1, params.tag, params.m, params.n, "logpdf_matrix_mt");
  const double b = params.tag.beta();
  const double m = static_cast<double>(params.m);
  const double n = static_cast<double>(params.n);
  // tr Delta D Lambda D* = |M* D N|_F^2.
  const DivMatrix w = matmul(
      matmul(conj_transpose(params.Delta.chol()), t1 - params.mu),
      params.Lambda.chol());
  const double q = w.frobenius_norm() * w.frobenius_norm();
  return matrix_mt_log_constant(params.tag, params.m, params.n, params.nu,
                                params.rho) +
         b * n / 2.0 * params.Delta.logdet() +
         b * m / 2.0 * params.Lambda.logdet() -
         b * (params.nu + m * n) / 2.0 * std::log1p(params.rho * q);
}

double logpdf_matrix_mt_row(AlgebraTag tag, Index n, double nu, double rho,
                            double r2) {
  require(n >= 1 && nu > 0.0 && rho > 0.0,
          "logpdf_matrix_mt_row: need n >= 1, nu > 0, rho > 0");
  require(r2 >= 0.0, "logpdf_matrix_mt_row: squared norm must be >= 0");
  const double b = tag.beta();
  return matrix_mt_log_constant(tag, 1, n, nu, rho) -
         b * (nu + static_cast<double>(n)) / 2.0 * std::log1p(rho * r2);
}

double logpdf_beta2_multivariate(const BetaIIParams& params,
                                 const DivMatrix& f1) {
  params.validate();
  const Index k = params.dim();
  require_shape(f1, params.tag, k, k, "logpdf_beta2_multivariate");
  const AlgebraTag tag = params.tag;
  const double b = tag.beta();
  const double mn = static_cast<double>(params.m * params.n);
  const double l = static_cast<double>(
      params.orientation == Orientation::gram ? params.n : params.m);
  const double kd = static_cast<double>(k);
  const double det_power = b * (l - kd + 1.0) / 2.0 - 1.0;

  double value = log_gamma(b * (params.nu + mn) / 2.0) -
                 log_gamma(b * params.nu / 2.0) -
                 log_mvgamma(tag, static_cast<int>(k), b * l / 2.0) +
                 power_of_det(det_power, cone_logdet(f1));
  double tr = 0.0;
  if (params.scale) {
    value += b * l / 2.0 * params.scale->logdet();
    tr = real_trace(matmul(params.scale->mat(), f1));
  } else {
    tr = real_trace(f1);
  }
  require(tr >= 0.0, "logpdf_beta2_multivariate: negative trace");
  return value - b * (params.nu + mn) / 2.0 * std::log1p(tr);
}

double logpdf_beta2_multivariate(const BetaIIParams& params,
                                 const HermitianPD& f1) {
  return logpdf_beta2_multivariate(params, f1.mat());
}

}  // namespace rdmt
