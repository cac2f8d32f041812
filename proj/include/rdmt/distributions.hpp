#ifndef RDMT_DISTRIBUTIONS_HPP_
#define RDMT_DISTRIBUTIONS_HPP_

#include <optional>
#include <vector>

#include "rdmt/algebra.hpp"
#include "rdmt/rng.hpp"

namespace rdmt {

// Gaussian convention used by every sampler and density in this header:
// under identity parameters each real coefficient of each entry is
// N(0, 1/beta), so every entry has unit expected squared norm.  The
// Wishart W_m^beta(nu, Xi) has density proportional to
//   |V|^(beta (nu - m + 1)/2 - 1) etr(-beta Xi^{-1} V / 2)
// and mean nu * Xi.

enum class Orientation { gram, cogram };
enum class WishartMethod { bartlett, gram };
enum class MatricTMethod { wishart_root, inverse_root };
enum class DensityForm { primal, dual };

//======================================================================
// Matricvariate T: T = L^{-1} Y + mu with L L* = V ~ W_m(nu, Xi) and
// Y ~ N_{m x n}(0, I_m (x) Sigma).  Requires nu > beta (m - 1).
struct MatricTParams {
  AlgebraTag tag;
  Index m;
  Index n;
  double nu;
  DivMatrix mu;
  HermitianPD Xi;
  HermitianPD Sigma;

  // mu = 0, Xi = I_m, Sigma = I_n.
  static MatricTParams standard(AlgebraTag tag, Index m, Index n, double nu);
  void validate() const;
};

// Matrix multivariate T with precision-like scales:
// Q = (M*)^{-1} S^{-1/2} Y N^{-1} + mu, M M* = Delta, N N* = Lambda,
// S ~ Gamma^beta(nu, rho), Y standard Gaussian.
struct MatrixMTParams {
  AlgebraTag tag;
  Index m;
  Index n;
  double nu;
  double rho;
  DivMatrix mu;
  HermitianPD Delta;
  HermitianPD Lambda;

  static MatrixMTParams standard(AlgebraTag tag, Index m, Index n, double nu,
                                 double rho = 1.0);
  void validate() const;
};

struct WishartParams {
  AlgebraTag tag;
  Index m;
  double nu;
  HermitianPD Xi;

  static WishartParams standard(AlgebraTag tag, Index m, double nu);
  void validate() const;
};

// S ~ Gamma^beta(nu, rho): shape beta nu / 2, scale 2 rho / beta.
struct GammaScalarParams {
  AlgebraTag tag;
  double nu;
  double rho;

  void validate() const;
};

// Beta type II.  `gram` is F = T T* (m x m, needs n >= m); `cogram` is
// F = T* T (n x n, needs n < m).  The optional scale (Delta for the
// matricvariate family, Pi for the matrix multivariate family) has the
// size of F and selects the nonstandardised form.
struct BetaIIParams {
  AlgebraTag tag;
  Index m;
  Index n;
  double nu;
  Orientation orientation = Orientation::gram;
  std::optional<HermitianPD> scale;

  // Side length of F.
  Index dim() const { return orientation == Orientation::gram ? m : n; }
  void validate() const;
};

// Finite scale mixture of normals: with probability weights[k] the whole
// Gaussian matrix is multiplied by scales[k].
struct ScaleMixtureSpec {
  std::vector<double> weights;
  std::vector<double> scales;

  void validate() const;
};

//======================================================================
// Samplers.  Each mutates only its RngStream.

// Y0 * L_Sigma* where Y0 has i.i.d. N(0, 1/beta) coefficients.
DivMatrix sample_gaussian(RngStream& rng, AlgebraTag tag, Index m, Index n);
DivMatrix sample_gaussian(RngStream& rng, AlgebraTag tag, Index m, Index n,
                          const HermitianPD& Sigma);

double sample_gamma_scalar(RngStream& rng, const GammaScalarParams& params);

// Lower-triangular square root L_Xi B of a Wishart draw, where B is the
// Bartlett factor: B_ii^2 ~ Gamma(beta (nu - i + 1)/2, 2/beta) and the
// strictly lower entries are standard algebra Gaussians.
DivMatrix sample_wishart_root(RngStream& rng, const WishartParams& params);

// `gram` additionally requires integer nu >= m.
HermitianPD sample_wishart(RngStream& rng, const WishartParams& params,
                           WishartMethod method = WishartMethod::bartlett);

// `inverse_root` uses T = X L1^{-1} + mu with L1 L1* ~ W_n(nu + n - m,
// Sigma^{-1}) and X ~ N(0, Xi^{-1} (x) I_n); it needs
// nu + n - m > beta (n - 1).
DivMatrix sample_matric_t(RngStream& rng, const MatricTParams& params,
                          MatricTMethod method = MatricTMethod::wishart_root);

// F = T T* (gram) or T* T (cogram) with T standard matricvariate T; with a
// scale Delta, Z = M F M* where M M* = Delta.
HermitianPD sample_beta2_matric(RngStream& rng, const BetaIIParams& params);

DivMatrix sample_matrix_mt(RngStream& rng, const MatrixMTParams& params);

// F1 = T1 T1* (or T1* T1) with T1 standard matrix multivariate T (rho = 1);
// with a scale Pi, Z = K F1 K* where K* Pi K = I.
HermitianPD sample_beta2_multivariate(RngStream& rng,
                                      const BetaIIParams& params);

// T = L^{-1} Y1 where (Y1 | Y2) is an m x (n + nu) Gaussian matrix scaled by
// one mixture draw and L L* = Y2 Y2*.  The scale cancels, so T is
// matricvariate T(nu, 0, I, I) whatever the mixture.  Requires integer
// nu >= m.
DivMatrix sample_elliptical_t(RngStream& rng, AlgebraTag tag, Index m, Index n,
                              int nu, const ScaleMixtureSpec& mix);

//======================================================================
// Log densities.  All are evaluated in log space; densities that vanish on
// the boundary of the positive definite cone return -infinity there.

// primal: |Xi^{-1} + (T-mu) Sigma^{-1} (T-mu)*|^{-beta(n+nu)/2} form.
// dual:   |Sigma + (T-mu)* Xi (T-mu)|^{-beta(n+nu)/2} form.
double logpdf_matric_t(const MatricTParams& params, const DivMatrix& t,
                       DensityForm form = DensityForm::primal);

double logpdf_beta2_matric(const BetaIIParams& params, const DivMatrix& f);
double logpdf_beta2_matric(const BetaIIParams& params, const HermitianPD& f);

double logpdf_matrix_mt(const MatrixMTParams& params, const DivMatrix& t1);

double logpdf_beta2_multivariate(const BetaIIParams& params,
                                 const DivMatrix& f1);
double logpdf_beta2_multivariate(const BetaIIParams& params,
                                 const HermitianPD& f1);

// Standard-parameter densities of a single row (m = 1, mu = 0, identity
// scales) as a function of the squared row norm r2 = |t|^2.  These agree
// with the matrix evaluators and are defined for every beta, including
// octonion rows of any length.
double logpdf_matric_t_row(AlgebraTag tag, Index n, double nu, double r2);
double logpdf_matrix_mt_row(AlgebraTag tag, Index n, double nu, double rho,
                            double r2);

}  // namespace rdmt

#endif  // RDMT_DISTRIBUTIONS_HPP_
