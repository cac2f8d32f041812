#include "rdmt/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "rdmt/special.hpp"

namespace rdmt {

namespace {

// Kronrod abscissae and weights (QUADPACK qk15); odd indices 1, 3, 5 are
// the Gauss nodes, index 7 is the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const RealFunction& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  kron *= h;
  gauss *= h;
  return {a, b, kron, std::abs(kron - gauss)};
}

double safe_exp(double x) { return std::isfinite(x) ? std::exp(x) : 0.0; }

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

QuadratureResult integrate(const RealFunction& f, double a, double b,
                           const QuadratureOptions& opts) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate: finite limits required");
  }
  if (a == b) return {};
  std::priority_queue<Panel> heap;
  Panel first = gk15(f, a, b);
  heap.push(first);
  double value = first.value;
  double error = first.error;
  int evaluations = 15;
  int intervals = 1;
  while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
    if (intervals >= opts.max_intervals) {
      throw NumericalError("integrate: no convergence within " +
                           std::to_string(opts.max_intervals) + " intervals");
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gk15(f, worst.a, mid);
    const Panel right = gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    evaluations += 30;
    ++intervals;
  }
  // Re-add from the panels to shed accumulated cancellation.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {value, error, evaluations};
}

QuadratureResult integrate_line(const RealFunction& f, double a, double b,
                                const QuadratureOptions& opts) {
  if (!(a < b)) {
    if (a == b) return {};
    throw DomainError("integrate_line: need a < b");
  }
  constexpr int kMaxPanels = 60;
  constexpr double kCore = 8.0;
  // Finite core.
  double lo = std::isfinite(a) ? a : (std::isfinite(b) ? b - kCore : -kCore);
  double hi = std::isfinite(b) ? b : (std::isfinite(a) ? a + kCore : kCore);
  lo = std::max(lo, a);
  hi = std::min(hi, b);
  QuadratureResult total = integrate(f, lo, hi, opts);

  auto extend = [&](double start, double direction) {
    double width = 1.0;
    double edge = start;
    for (int k = 0; k < kMaxPanels; ++k) {
      const double next = edge + direction * width;
      const QuadratureResult piece =
          direction > 0 ? integrate(f, edge, next, opts)
                        : integrate(f, next, edge, opts);
      total.value += piece.value;
      total.error += piece.error;
      total.evaluations += piece.evaluations;
      // Stop once a panel is negligible and the integrand is falling off;
      // a small panel on the rising side of a distant peak does not count.
      if (std::abs(piece.value) < opts.abs_tol * 1e-3 &&
          std::abs(f(next)) <= std::abs(f(edge))) {
        return;
      }
      edge = next;
      width *= 2.0;
    }
    throw NumericalError("integrate_line: integrand does not decay");
  };
  if (a == -kInf) extend(lo, -1.0);
  if (b == kInf) extend(hi, 1.0);
  return total;
}

double quadrature_mass_radial(const RealFunction& log_density_r2, int dim,
                              const QuadratureOptions& opts) {
  if (dim < 1) throw DomainError("quadrature_mass_radial: dim must be >= 1");
  const double d = dim;
  const double log_sphere =
      std::log(2.0) + d / 2.0 * std::log(std::numbers::pi) - log_gamma(d / 2.0);
  const auto g = [&](double x) {
    return safe_exp(log_sphere + d * x + log_density_r2(std::exp(2.0 * x)));
  };
  return integrate_line(g, -kInf, kInf, opts).value;
}

double quadrature_mass_scalar(const RealFunction& log_density_r2,
                              AlgebraTag tag, const QuadratureOptions& opts) {
  return quadrature_mass_radial(log_density_r2, tag.beta(), opts);
}

double quadrature_mass_halfline(const RealFunction& log_density,
                                const QuadratureOptions& opts) {
  const auto g = [&](double x) {
    return safe_exp(x + log_density(std::exp(x)));
  };
  return integrate_line(g, -kInf, kInf, opts).value;
}

//----------------------------------------------------------------------
NumericCdf::NumericCdf(const RealFunction& log_density, double log_lo,
                       double log_hi, int intervals,
                       const QuadratureOptions& opts)
    : log_density_(log_density), lo_(log_lo), hi_(log_hi) {
  if (!(log_lo < log_hi) || intervals < 1) {
    throw DomainError("NumericCdf: need log_lo < log_hi and intervals >= 1");
  }
  step_ = (hi_ - lo_) / intervals;
  const auto g = [this](double x) { return slope(x); };
  const double below = integrate_line(g, -kInf, lo_, opts).value;
  cum_.resize(static_cast<std::size_t>(intervals) + 1);
  dens_.resize(cum_.size());
  cum_[0] = below;
  dens_[0] = slope(lo_);
  for (int i = 1; i <= intervals; ++i) {
    const double x0 = lo_ + (i - 1) * step_;
    const double x1 = lo_ + i * step_;
    cum_[i] = cum_[i - 1] + integrate(g, x0, x1, opts).value;
    dens_[i] = slope(x1);
  }
  const double above = integrate_line(g, hi_, kInf, opts).value;
  total_ = cum_.back() + above;
}

double NumericCdf::slope(double x) const {
  return safe_exp(x + log_density_(std::exp(x)));
}

double NumericCdf::operator()(double y) const {
  if (!(y > 0.0)) return 0.0;
  const double x = std::log(y);
  if (x <= lo_) {
    return (cum_[0] - integrate_line([this](double t) { return slope(t); }, x,
                                     lo_)
                          .value) /
           total_;
  }
  if (x >= hi_) {
    return (cum_.back() + integrate([this](double t) { return slope(t); }, hi_,
                                    x)
                              .value) /
           total_;
  }
  const double pos = (x - lo_) / step_;
  const auto i = std::min(static_cast<std::size_t>(pos), cum_.size() - 2);
  const double t = pos - static_cast<double>(i);
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  const double value = h00 * cum_[i] + h10 * step_ * dens_[i] +
                       h01 * cum_[i + 1] + h11 * step_ * dens_[i + 1];
  return std::clamp(value / total_, 0.0, 1.0);
}

}  // namespace rdmt
