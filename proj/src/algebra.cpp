#include "rdmt/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>

#include <Eigen/Dense>

namespace rdmt {

namespace {

// In-place conjugate of an n-coefficient Cayley-Dickson element.
void cd_conj(const double* a, double* out, int n) {
  out[0] = a[0];
  for (int k = 1; k < n; ++k) out[k] = -a[k];
}

// out = a b over the algebra of dimension n, by the doubling rule
//   (a1, a2)(c1, c2) = (a1 c1 - conj(c2) a2, c2 a1 + a2 conj(c1)).
// `out` must not alias `a` or `b`.
void cd_mul(const double* a, const double* b, double* out, int n) {
  if (n == 1) {
    out[0] = a[0] * b[0];
    return;
  }
  const int h = n / 2;
  const double* a1 = a;
  const double* a2 = a + h;
  const double* c1 = b;
  const double* c2 = b + h;
  std::array<double, 4> conj_c1{}, conj_c2{}, t1{}, t2{};
  cd_conj(c1, conj_c1.data(), h);
  cd_conj(c2, conj_c2.data(), h);

  cd_mul(a1, c1, t1.data(), h);
  cd_mul(conj_c2.data(), a2, t2.data(), h);
  for (int k = 0; k < h; ++k) out[k] = t1[k] - t2[k];

  cd_mul(c2, a1, t1.data(), h);
  cd_mul(a2, conj_c1.data(), t2.data(), h);
  for (int k = 0; k < h; ++k) out[h + k] = t1[k] + t2[k];
}

void require_same_tag(AlgebraTag a, AlgebraTag b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": algebra mismatch (beta " +
                            std::to_string(a.beta()) + " vs " +
                            std::to_string(b.beta()) + ")");
  }
}

void require_associative(const DivMatrix& x, const char* what) {
  if (x.beta() == 8 && (x.rows() > 1 || x.cols() > 1)) {
    throw Unsupported(std::string(what) +
                      ": octonion matrices are limited to 1x1 (octonion "
                      "multiplication is not associative)");
  }
}

Eigen::MatrixXd to_eigen_real(const DivMatrix& x) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(x.rows()),
                      static_cast<Eigen::Index>(x.cols()));
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          x.entry(i, j)[0];
    }
  }
  return out;
}

Eigen::MatrixXcd to_eigen_complex(const DivMatrix& x) {
  const DivMatrix adj = complex_adjoint(x);
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(adj.rows()),
                       static_cast<Eigen::Index>(adj.cols()));
  for (Index i = 0; i < adj.rows(); ++i) {
    for (Index j = 0; j < adj.cols(); ++j) {
      const auto e = adj.entry(i, j);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {e[0],
                                                                         e[1]};
    }
  }
  return out;
}

// The adjoint of a quaternion matrix carries every eigen/singular value
// twice.  Input sorted descending; returns one value per pair.
std::vector<double> collapse_pairs(const std::vector<double>& v) {
  if (v.size() % 2 != 0) {
    throw NumericalError("collapse_pairs: odd number of adjoint values");
  }
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  scale = std::max(scale, std::numeric_limits<double>::min());
  std::vector<double> out;
  out.reserve(v.size() / 2);
  for (std::size_t i = 0; i < v.size(); i += 2) {
    if (std::abs(v[i] - v[i + 1]) > kPairTolerance * scale) {
      throw NumericalError(
          "quaternion adjoint spectrum is not paired within tolerance");
    }
    out.push_back(0.5 * (v[i] + v[i + 1]));
  }
  return out;
}

}  // namespace

//----------------------------------------------------------------------
AlgebraTag AlgebraTag::from_beta(int beta) {
  if (beta != 1 && beta != 2 && beta != 4 && beta != 8) {
    throw DomainError("beta must be one of 1, 2, 4, 8 (got " +
                      std::to_string(beta) + ")");
  }
  return AlgebraTag(beta);
}

const char* AlgebraTag::name() const {
  switch (beta_) {
    case 1:
      return "real";
    case 2:
      return "complex";
    case 4:
      return "quaternion";
    default:
      return "octonion";
  }
}

//----------------------------------------------------------------------
DivScalar::DivScalar(AlgebraTag tag, std::span<const double> coeffs)
    : tag_(tag) {
  if (coeffs.size() != static_cast<std::size_t>(tag.beta())) {
    throw DomainError("DivScalar: expected " + std::to_string(tag.beta()) +
                      " coefficients, got " + std::to_string(coeffs.size()));
  }
  std::copy(coeffs.begin(), coeffs.end(), c_.begin());
}

DivScalar DivScalar::real(AlgebraTag tag, double value) {
  DivScalar s(tag);
  s.c_[0] = value;
  return s;
}

DivScalar DivScalar::unit(AlgebraTag tag, int k) {
  if (k < 0 || k >= tag.beta()) {
    throw DomainError("DivScalar::unit: basis index out of range");
  }
  DivScalar s(tag);
  s.c_[static_cast<std::size_t>(k)] = 1.0;
  return s;
}

double DivScalar::norm2() const {
  double acc = 0.0;
  for (double x : coeffs()) acc += x * x;
  return acc;
}

double DivScalar::norm() const { return std::sqrt(norm2()); }

DivScalar DivScalar::conj() const {
  DivScalar out(tag_);
  cd_conj(c_.data(), out.c_.data(), beta());
  return out;
}

DivScalar DivScalar::inverse() const {
  const double n2 = norm2();
  if (n2 == 0.0) throw DomainError("DivScalar::inverse: zero element");
  DivScalar out = conj();
  out *= 1.0 / n2;
  return out;
}

DivScalar& DivScalar::operator+=(const DivScalar& other) {
  require_same_tag(tag_, other.tag_, "DivScalar +");
  for (int k = 0; k < beta(); ++k) (*this)[k] += other[k];
  return *this;
}

DivScalar& DivScalar::operator-=(const DivScalar& other) {
  require_same_tag(tag_, other.tag_, "DivScalar -");
  for (int k = 0; k < beta(); ++k) (*this)[k] -= other[k];
  return *this;
}

DivScalar& DivScalar::operator*=(double s) {
  for (int k = 0; k < beta(); ++k) (*this)[k] *= s;
  return *this;
}

DivScalar scalar_mul(const DivScalar& a, const DivScalar& b) {
  require_same_tag(a.tag(), b.tag(), "scalar_mul");
  DivScalar out(a.tag());
  cd_mul(a.coeffs().data(), b.coeffs().data(), out.coeffs().data(), a.beta());
  return out;
}

DivScalar operator+(DivScalar a, const DivScalar& b) { return a += b; }
DivScalar operator-(DivScalar a, const DivScalar& b) { return a -= b; }
DivScalar operator-(DivScalar a) { return a *= -1.0; }
DivScalar operator*(const DivScalar& a, const DivScalar& b) {
  return scalar_mul(a, b);
}
DivScalar operator*(DivScalar a, double s) { return a *= s; }
DivScalar operator*(double s, DivScalar a) { return a *= s; }

//----------------------------------------------------------------------
DivMatrix::DivMatrix(AlgebraTag tag, Index rows, Index cols)
    : tag_(tag), rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) {
    throw DomainError("DivMatrix: dimensions must be positive");
  }
  data_.assign(rows * cols * static_cast<std::size_t>(tag.beta()), 0.0);
}

DivMatrix DivMatrix::identity(AlgebraTag tag, Index n) {
  DivMatrix out(tag, n, n);
  for (Index i = 0; i < n; ++i) out.entry(i, i)[0] = 1.0;
  return out;
}

DivMatrix DivMatrix::from_real(AlgebraTag tag, Index rows, Index cols,
                               std::span<const double> values) {
  if (values.size() != rows * cols) {
    throw DimensionMismatch("DivMatrix::from_real: wrong number of values");
  }
  DivMatrix out(tag, rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) out.entry(i, j)[0] = values[i * cols + j];
  }
  return out;
}

DivMatrix DivMatrix::diagonal(AlgebraTag tag, std::span<const double> values) {
  DivMatrix out(tag, values.size(), values.size());
  for (Index i = 0; i < values.size(); ++i) out.entry(i, i)[0] = values[i];
  return out;
}

DivScalar DivMatrix::operator()(Index i, Index j) const {
  return DivScalar(tag_, entry(i, j));
}

void DivMatrix::set(Index i, Index j, const DivScalar& value) {
  require_same_tag(tag_, value.tag(), "DivMatrix::set");
  const auto c = value.coeffs();
  std::copy(c.begin(), c.end(), entry(i, j).begin());
}

std::span<double> DivMatrix::entry(Index i, Index j) {
  return {data_.data() + offset(i, j), static_cast<std::size_t>(beta())};
}

std::span<const double> DivMatrix::entry(Index i, Index j) const {
  return {data_.data() + offset(i, j), static_cast<std::size_t>(beta())};
}

DivMatrix& DivMatrix::operator+=(const DivMatrix& other) {
  require_same_tag(tag_, other.tag_, "DivMatrix +");
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw DimensionMismatch("DivMatrix +: shape mismatch");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

DivMatrix& DivMatrix::operator-=(const DivMatrix& other) {
  require_same_tag(tag_, other.tag_, "DivMatrix -");
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw DimensionMismatch("DivMatrix -: shape mismatch");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

DivMatrix& DivMatrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

double DivMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (double x : data_) acc += x * x;
  return std::sqrt(acc);
}

double DivMatrix::max_abs_coeff() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

DivMatrix operator+(DivMatrix a, const DivMatrix& b) { return a += b; }
DivMatrix operator-(DivMatrix a, const DivMatrix& b) { return a -= b; }
DivMatrix operator*(DivMatrix a, double s) { return a *= s; }
DivMatrix operator*(double s, DivMatrix a) { return a *= s; }

DivMatrix conj_transpose(const DivMatrix& x) {
  DivMatrix out(x.tag(), x.cols(), x.rows());
  const int beta = x.beta();
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      cd_conj(x.entry(i, j).data(), out.entry(j, i).data(), beta);
    }
  }
  return out;
}

DivMatrix matmul(const DivMatrix& a, const DivMatrix& b) {
  require_same_tag(a.tag(), b.tag(), "matmul");
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matmul: inner dimensions differ (" +
                            std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()) + ")");
  }
  require_associative(a, "matmul");
  require_associative(b, "matmul");
  const int beta = a.beta();
  DivMatrix out(a.tag(), a.rows(), b.cols());
  std::array<double, 8> prod{};
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      auto acc = out.entry(i, j);
      for (Index k = 0; k < a.cols(); ++k) {
        if (beta == 1) {
          acc[0] += a.entry(i, k)[0] * b.entry(k, j)[0];
          continue;
        }
        cd_mul(a.entry(i, k).data(), b.entry(k, j).data(), prod.data(), beta);
        for (int c = 0; c < beta; ++c) acc[static_cast<std::size_t>(c)] += prod[static_cast<std::size_t>(c)];
      }
    }
  }
  return out;
}

DivMatrix hermitian_part(const DivMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("hermitian_part: not square");
  DivMatrix out = a + conj_transpose(a);
  out *= 0.5;
  return out;
}

double hermitian_defect(const DivMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("hermitian_defect: not square");
  const DivMatrix d = a - conj_transpose(a);
  return d.max_abs_coeff();
}

DivMatrix cholesky_lower(const DivMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("cholesky: matrix not square");
  require_associative(a, "cholesky");
  const Index n = a.rows();
  const AlgebraTag tag = a.tag();
  DivMatrix l(tag, n, n);
  for (Index j = 0; j < n; ++j) {
    double pivot = a.entry(j, j)[0];
    for (Index k = 0; k < j; ++k) pivot -= l(j, k).norm2();
    if (!(pivot > 0.0) || !std::isfinite(pivot)) {
      throw NotPositiveDefinite("cholesky: non-positive pivot at index " +
                                std::to_string(j));
    }
    const double ljj = std::sqrt(pivot);
    l.entry(j, j)[0] = ljj;
    for (Index i = j + 1; i < n; ++i) {
      DivScalar s = a(i, j);
      for (Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k).conj();
      s *= 1.0 / ljj;
      l.set(i, j, s);
    }
  }
  return l;
}

DivMatrix inverse_lower(const DivMatrix& l) {
  if (!l.is_square()) throw DimensionMismatch("inverse_lower: not square");
  require_associative(l, "inverse_lower");
  const Index n = l.rows();
  DivMatrix x(l.tag(), n, n);
  std::vector<DivScalar> diag_inv;
  diag_inv.reserve(n);
  for (Index i = 0; i < n; ++i) diag_inv.push_back(l(i, i).inverse());
  for (Index j = 0; j < n; ++j) {
    x.set(j, j, diag_inv[j]);
    for (Index i = j + 1; i < n; ++i) {
      DivScalar s(l.tag());
      for (Index k = j; k < i; ++k) s += l(i, k) * x(k, j);
      x.set(i, j, -(diag_inv[i] * s));
    }
  }
  return x;
}

//----------------------------------------------------------------------
HermitianPD::HermitianPD(const DivMatrix& a)
    : mat_(a.tag(), 1, 1), chol_(a.tag(), 1, 1) {
  if (!a.is_square()) throw DimensionMismatch("HermitianPD: not square");
  require_associative(a, "HermitianPD");
  const double scale = std::max(1.0, a.max_abs_coeff());
  if (hermitian_defect(a) > kHermitianTolerance * scale) {
    throw DomainError("HermitianPD: matrix is not Hermitian");
  }
  mat_ = hermitian_part(a);
  chol_ = cholesky_lower(mat_);
}

HermitianPD HermitianPD::identity(AlgebraTag tag, Index n) {
  return HermitianPD(DivMatrix::identity(tag, n), DivMatrix::identity(tag, n));
}

double HermitianPD::logdet() const {
  double acc = 0.0;
  for (Index i = 0; i < chol_.rows(); ++i) acc += std::log(chol_.entry(i, i)[0]);
  return 2.0 * acc;
}

HermitianPD HermitianPD::inverse() const {
  const DivMatrix linv = inverse_lower(chol_);
  return HermitianPD(matmul(conj_transpose(linv), linv));
}

DivMatrix cholesky_hpd(const HermitianPD& a) { return a.chol(); }

double logdet_hpd(const HermitianPD& a) { return a.logdet(); }

//----------------------------------------------------------------------
DivMatrix complex_adjoint(const DivMatrix& x) {
  const AlgebraTag c = AlgebraTag::complex();
  switch (x.beta()) {
    case 1: {
      DivMatrix out(c, x.rows(), x.cols());
      for (Index i = 0; i < x.rows(); ++i) {
        for (Index j = 0; j < x.cols(); ++j) out.entry(i, j)[0] = x.entry(i, j)[0];
      }
      return out;
    }
    case 2:
      return x;
    case 4: {
      DivMatrix out(c, 2 * x.rows(), 2 * x.cols());
      for (Index i = 0; i < x.rows(); ++i) {
        for (Index j = 0; j < x.cols(); ++j) {
          const auto q = x.entry(i, j);
          const double w = q[0], xi = q[1], y = q[2], z = q[3];
          auto put = [&](Index r, Index s, double re, double im) {
            auto e = out.entry(2 * i + r, 2 * j + s);
            e[0] = re;
            e[1] = im;
          };
          put(0, 0, w, xi);
          put(0, 1, y, z);
          put(1, 0, -y, z);
          put(1, 1, w, -xi);
        }
      }
      return out;
    }
    default:
      throw Unsupported("complex_adjoint: not defined for octonions");
  }
}

std::vector<double> singular_values(const DivMatrix& x) {
  if (x.rows() > x.cols()) return singular_values(conj_transpose(x));
  if (x.beta() == 8) {
    require_associative(x, "singular_values");
    return {x(0, 0).norm()};
  }
  std::vector<double> out;
  if (x.beta() == 1) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen_real(x));
    const auto& s = svd.singularValues();
    out.assign(s.data(), s.data() + s.size());
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen_complex(x));
    const auto& s = svd.singularValues();
    out.assign(s.data(), s.data() + s.size());
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  if (x.beta() == 4) out = collapse_pairs(out);
  return out;
}

std::vector<double> hermitian_eigenvalues(const DivMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("hermitian_eigenvalues: not square");
  const double scale = std::max(1.0, a.max_abs_coeff());
  if (hermitian_defect(a) > HermitianPD::kHermitianTolerance * scale) {
    throw DomainError("hermitian_eigenvalues: matrix is not Hermitian");
  }
  if (a.beta() == 8) {
    require_associative(a, "hermitian_eigenvalues");
    return {a.entry(0, 0)[0]};
  }
  const DivMatrix h = hermitian_part(a);
  std::vector<double> out;
  if (h.beta() == 1) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen_real(h),
                                                      Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    out.assign(ev.data(), ev.data() + ev.size());
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen_complex(h),
                                                       Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    out.assign(ev.data(), ev.data() + ev.size());
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  if (h.beta() == 4) out = collapse_pairs(out);
  return out;
}

std::vector<double> hermitian_eigenvalues(const HermitianPD& a) {
  return hermitian_eigenvalues(a.mat());
}

}  // namespace rdmt
