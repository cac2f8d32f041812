#ifndef RDMT_QUADRATURE_HPP_
#define RDMT_QUADRATURE_HPP_

#include <functional>
#include <vector>

#include "rdmt/algebra.hpp"

namespace rdmt {

using RealFunction = std::function<double(double)>;

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

// Globally adaptive 7/15-point Gauss-Kronrod integration on [a, b]:
// the interval with the largest error estimate is bisected until the total
// estimate is below max(abs_tol, rel_tol |I|).  Throws NumericalError when
// max_intervals is reached first.
QuadratureResult integrate(const RealFunction& f, double a, double b,
                           const QuadratureOptions& opts = {});

// Integral over [a, b] where either end may be infinite.  Infinite ends are
// handled by appending panels of doubling width until a panel contributes
// less than abs_tol / 1000 while the integrand is decreasing outward.  Meant for integrands that decay at least
// exponentially, e.g. densities written in a logarithmic variable.
QuadratureResult integrate_line(const RealFunction& f, double a, double b,
                                const QuadratureOptions& opts = {});

// Mass of an isotropic density on R^d given its log density as a function
// of the squared radius: integral of |S^(d-1)| r^(d-1) pdf(r) over (0, inf),
// evaluated in x = log r.
double quadrature_mass_radial(const RealFunction& log_density_r2, int dim,
                              const QuadratureOptions& opts = {});

// The d = beta case: a density on the algebra itself.
double quadrature_mass_scalar(const RealFunction& log_density_r2,
                              AlgebraTag tag,
                              const QuadratureOptions& opts = {});

// Mass of a density on (0, inf) given its log density, evaluated in
// x = log y.
double quadrature_mass_halfline(const RealFunction& log_density,
                                const QuadratureOptions& opts = {});

// Cumulative distribution function of a positive random variable built by
// integrating its density on a grid in log y and interpolating with cubic
// Hermite pieces (the density supplies the slopes).  The tails beyond the
// grid are integrated exactly and the result is normalised by the total
// mass, which is kept for inspection.
class NumericCdf {
 public:
  NumericCdf(const RealFunction& log_density, double log_lo, double log_hi,
             int intervals, const QuadratureOptions& opts = {});

  double operator()(double y) const;
  double total_mass() const { return total_; }

 private:
  double slope(double x) const;

  RealFunction log_density_;
  double lo_;
  double hi_;
  double step_;
  std::vector<double> cum_;
  std::vector<double> dens_;
  double total_ = 0.0;
};

}  // namespace rdmt

#endif  // RDMT_QUADRATURE_HPP_
