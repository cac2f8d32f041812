#ifndef RDMT_ALGEBRA_HPP_
#define RDMT_ALGEBRA_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rdmt/errors.hpp"

namespace rdmt {

using Index = std::size_t;

//======================================================================
// AlgebraTag identifies one of the four real normed division algebras by
// its real dimension beta: 1 (real), 2 (complex), 4 (quaternion) or
// 8 (octonion).  No other value can be constructed.
class AlgebraTag {
 public:
  // Throws DomainError for anything other than 1, 2, 4, 8.
  static AlgebraTag from_beta(int beta);

  static constexpr AlgebraTag real() { return AlgebraTag(1); }
  static constexpr AlgebraTag complex() { return AlgebraTag(2); }
  static constexpr AlgebraTag quaternion() { return AlgebraTag(4); }
  static constexpr AlgebraTag octonion() { return AlgebraTag(8); }

  constexpr int beta() const { return beta_; }
  const char* name() const;

  friend constexpr bool operator==(AlgebraTag, AlgebraTag) = default;

 private:
  explicit constexpr AlgebraTag(int beta) : beta_(beta) {}
  int beta_;
};

//======================================================================
// An element of R, C, H or O stored as beta real coefficients in the
// Cayley-Dickson basis (1, e1, ..., e_{beta-1}).  Coefficient 0 is the real
// part.  The quaternions are pairs of complex numbers and the octonions
// pairs of quaternions, so e.g. for beta = 4 the element
// w + x e1 + y e2 + z e3 is the pair (w + x i, y + z i).
class DivScalar {
 public:
  explicit DivScalar(AlgebraTag tag) : tag_(tag) {}
  // Throws DomainError if coeffs.size() != tag.beta().
  DivScalar(AlgebraTag tag, std::span<const double> coeffs);

  static DivScalar real(AlgebraTag tag, double value);
  // The basis element e_k (e_0 = 1).
  static DivScalar unit(AlgebraTag tag, int k);

  AlgebraTag tag() const { return tag_; }
  int beta() const { return tag_.beta(); }

  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  std::span<const double> coeffs() const {
    return {c_.data(), static_cast<std::size_t>(tag_.beta())};
  }
  std::span<double> coeffs() {
    return {c_.data(), static_cast<std::size_t>(tag_.beta())};
  }

  double re() const { return c_[0]; }
  double norm2() const;
  double norm() const;
  DivScalar conj() const;
  // Two-sided inverse conj(a)/|a|^2.  Throws DomainError for zero.
  DivScalar inverse() const;

  DivScalar& operator+=(const DivScalar& other);
  DivScalar& operator-=(const DivScalar& other);
  DivScalar& operator*=(double s);

 private:
  AlgebraTag tag_;
  std::array<double, 8> c_{};
};

// Cayley-Dickson product.  Associative for beta <= 4, alternative for
// beta = 8.  Throws DimensionMismatch when the tags differ.
DivScalar scalar_mul(const DivScalar& a, const DivScalar& b);

DivScalar operator+(DivScalar a, const DivScalar& b);
DivScalar operator-(DivScalar a, const DivScalar& b);
DivScalar operator-(DivScalar a);
DivScalar operator*(const DivScalar& a, const DivScalar& b);
DivScalar operator*(DivScalar a, double s);
DivScalar operator*(double s, DivScalar a);

//======================================================================
// Dense m x n matrix over a division algebra, row-major.  Each entry owns
// beta consecutive doubles in the backing store.
//
// Octonion matrices can be built and serialized, but every operation below
// that relies on associativity (products, factorizations, spectra) accepts
// beta = 8 only for 1 x 1 operands.
class DivMatrix {
 public:
  // Zero matrix.  Throws DomainError if rows or cols is zero.
  DivMatrix(AlgebraTag tag, Index rows, Index cols);

  static DivMatrix identity(AlgebraTag tag, Index n);
  // Matrix with real entries taken row-major from `values`.
  static DivMatrix from_real(AlgebraTag tag, Index rows, Index cols,
                             std::span<const double> values);
  static DivMatrix diagonal(AlgebraTag tag, std::span<const double> values);

  AlgebraTag tag() const { return tag_; }
  int beta() const { return tag_.beta(); }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  DivScalar operator()(Index i, Index j) const;
  void set(Index i, Index j, const DivScalar& value);
  std::span<double> entry(Index i, Index j);
  std::span<const double> entry(Index i, Index j) const;

  // All rows*cols*beta coefficients, row-major then coefficient.
  std::span<const double> raw() const { return data_; }
  std::span<double> raw() { return data_; }

  DivMatrix& operator+=(const DivMatrix& other);
  DivMatrix& operator-=(const DivMatrix& other);
  DivMatrix& operator*=(double s);

  double frobenius_norm() const;
  double max_abs_coeff() const;

 private:
  std::size_t offset(Index i, Index j) const {
    return (i * cols_ + j) * static_cast<std::size_t>(tag_.beta());
  }

  AlgebraTag tag_;
  Index rows_;
  Index cols_;
  std::vector<double> data_;
};

DivMatrix operator+(DivMatrix a, const DivMatrix& b);
DivMatrix operator-(DivMatrix a, const DivMatrix& b);
DivMatrix operator*(DivMatrix a, double s);
DivMatrix operator*(double s, DivMatrix a);

// (X*)_ij = conj(X_ji).
DivMatrix conj_transpose(const DivMatrix& x);

// Throws DimensionMismatch on shape or tag mismatch and Unsupported for
// octonion operands larger than 1 x 1.
DivMatrix matmul(const DivMatrix& a, const DivMatrix& b);

// A + A*, halved.  Square input only.
DivMatrix hermitian_part(const DivMatrix& a);

// Largest coefficient-wise deviation |A - A*|.
double hermitian_defect(const DivMatrix& a);

// Lower-triangular L with real positive diagonal and L L* = A.  Reads the
// lower triangle only.  Throws NotPositiveDefinite on a non-positive pivot.
DivMatrix cholesky_lower(const DivMatrix& a);

// Inverse of a lower-triangular matrix with invertible diagonal.
DivMatrix inverse_lower(const DivMatrix& l);

//======================================================================
// A Hermitian positive definite matrix together with its Cholesky factor.
// Construction symmetrizes the input, so round-off from sampler arithmetic
// is tolerated as long as |A - A*| stays within 1e-12 of the scale of A.
class HermitianPD {
 public:
  static constexpr double kHermitianTolerance = 1e-12;

  // Throws DimensionMismatch (non-square), DomainError (not Hermitian) or
  // NotPositiveDefinite.
  explicit HermitianPD(const DivMatrix& a);

  static HermitianPD identity(AlgebraTag tag, Index n);

  const DivMatrix& mat() const { return mat_; }
  const DivMatrix& chol() const { return chol_; }
  AlgebraTag tag() const { return mat_.tag(); }
  Index size() const { return mat_.rows(); }

  double logdet() const;
  HermitianPD inverse() const;

 private:
  HermitianPD(DivMatrix mat, DivMatrix chol)
      : mat_(std::move(mat)), chol_(std::move(chol)) {}

  DivMatrix mat_;
  DivMatrix chol_;
};

DivMatrix cholesky_hpd(const HermitianPD& a);

// 2 * sum log l_ii of the Cholesky factor: the ordinary determinant for
// beta <= 2 and the Moore determinant for quaternion Hermitian matrices.
double logdet_hpd(const HermitianPD& a);

// Complex representation.  beta = 1, 2 embed unchanged (as beta = 2);
// beta = 4 maps each quaternion w + x e1 + y e2 + z e3 to the block
// [[w + x i, y + z i], [-y + z i, w - x i]], giving a 2m x 2n complex
// matrix.  The map is multiplicative.  Throws Unsupported for beta = 8.
DivMatrix complex_adjoint(const DivMatrix& x);

// Singular values in descending order, min(rows, cols) of them.  For
// quaternions the adjoint's singular values come in pairs and each pair is
// reported once.
std::vector<double> singular_values(const DivMatrix& x);

// Eigenvalues of a Hermitian matrix, descending.  Throws DomainError if the
// input is not Hermitian.
std::vector<double> hermitian_eigenvalues(const DivMatrix& a);
std::vector<double> hermitian_eigenvalues(const HermitianPD& a);

// Relative tolerance used to recognise the doubled eigen/singular values
// of a quaternion matrix's complex adjoint.
inline constexpr double kPairTolerance = 1e-8;

}  // namespace rdmt

#endif  // RDMT_ALGEBRA_HPP_
