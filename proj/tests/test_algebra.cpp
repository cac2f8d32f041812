#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rdmt/algebra.hpp"
#include "test_util.hpp"

using namespace rdmt;
using rdmt::test::coeff_matrix;
using rdmt::test::max_abs_diff;

namespace {

const AlgebraTag kR = AlgebraTag::real();
const AlgebraTag kC = AlgebraTag::complex();
const AlgebraTag kH = AlgebraTag::quaternion();
const AlgebraTag kO = AlgebraTag::octonion();

DivScalar random_scalar(AlgebraTag tag, unsigned salt) {
  DivScalar s(tag);
  for (int k = 0; k < tag.beta(); ++k) {
    s[k] = std::sin(1.3 * (k + 1) + 0.7 * salt) + 0.1 * salt;
  }
  return s;
}

double scalar_diff(const DivScalar& a, const DivScalar& b) {
  double d = 0.0;
  for (int k = 0; k < a.beta(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

// Unitary 2 x 2 over H: a rotation with quaternion phases on the rows.
DivMatrix quaternion_unitary(double angle, const DivScalar& u1,
                             const DivScalar& u2) {
  DivMatrix r = DivMatrix::from_real(
      kH, 2, 2,
      std::vector<double>{std::cos(angle), -std::sin(angle), std::sin(angle),
                          std::cos(angle)});
  DivMatrix phase(kH, 2, 2);
  phase.set(0, 0, u1 * (1.0 / u1.norm()));
  phase.set(1, 1, u2 * (1.0 / u2.norm()));
  return matmul(phase, r);
}

}  // namespace

TEST_CASE("algebra tag accepts only 1, 2, 4, 8") {
  for (int b : {1, 2, 4, 8}) CHECK(AlgebraTag::from_beta(b).beta() == b);
  for (int b : {0, 3, 5, 16, -1}) {
    CHECK_THROWS_AS(AlgebraTag::from_beta(b), DomainError);
  }
}

TEST_CASE("scalar products") {
  CHECK((DivScalar::real(kR, 2) * DivScalar::real(kR, 3)).re() == 6.0);

  const DivScalar e1 = DivScalar::unit(kH, 1);
  const DivScalar e2 = DivScalar::unit(kH, 2);
  const DivScalar e3 = DivScalar::unit(kH, 3);
  CHECK(scalar_diff(e1 * e2, e3) == 0.0);
  CHECK(scalar_diff(e2 * e1, -e3) == 0.0);
  CHECK(scalar_diff(e1 * e1, DivScalar::real(kH, -1)) == 0.0);

  // Complex: i * i = -1.
  const DivScalar i = DivScalar::unit(kC, 1);
  CHECK(scalar_diff(i * i, DivScalar::real(kC, -1)) == 0.0);
}

TEST_CASE("norm is multiplicative in every algebra") {
  for (AlgebraTag tag : {kR, kC, kH, kO}) {
    for (unsigned s = 0; s < 5; ++s) {
      const DivScalar a = random_scalar(tag, s);
      const DivScalar b = random_scalar(tag, s + 11);
      CHECK((a * b).norm() == doctest::Approx(a.norm() * b.norm()).epsilon(1e-14));
      CHECK(scalar_diff((a * b).conj(), b.conj() * a.conj()) < 1e-14);
    }
  }
}

TEST_CASE("quaternions associate, octonions are alternative only") {
  const DivScalar a = random_scalar(kH, 1);
  const DivScalar b = random_scalar(kH, 2);
  const DivScalar c = random_scalar(kH, 3);
  CHECK(scalar_diff((a * b) * c, a * (b * c)) < 1e-13);

  const DivScalar x = random_scalar(kO, 1);
  const DivScalar y = random_scalar(kO, 2);
  const DivScalar z = random_scalar(kO, 3);
  CHECK(scalar_diff((x * x) * y, x * (x * y)) < 1e-13);
  CHECK(scalar_diff((y * x) * x, y * (x * x)) < 1e-13);
  CHECK(scalar_diff((x * y) * z, x * (y * z)) > 1e-3);
}

TEST_CASE("inverse is two-sided") {
  for (AlgebraTag tag : {kR, kC, kH, kO}) {
    const DivScalar a = random_scalar(tag, 4);
    const DivScalar one = DivScalar::real(tag, 1);
    CHECK(scalar_diff(a * a.inverse(), one) < 1e-14);
    CHECK(scalar_diff(a.inverse() * a, one) < 1e-14);
  }
  CHECK_THROWS_AS(DivScalar(kH).inverse(), DomainError);
}

TEST_CASE("conjugation and conjugate transpose") {
  const DivScalar q = DivScalar::real(kH, 1) + DivScalar::unit(kH, 1);
  const DivScalar qc = q.conj();
  CHECK(qc[0] == 1.0);
  CHECK(qc[1] == -1.0);

  const DivMatrix x = DivMatrix::from_real(kR, 2, 3,
                                           std::vector<double>{1, 2, 3, 4, 5, 6});
  const DivMatrix xt = conj_transpose(x);
  REQUIRE(xt.rows() == 3);
  REQUIRE(xt.cols() == 2);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 3; ++j) CHECK(xt(j, i).re() == x(i, j).re());
  }
}

TEST_CASE("matmul") {
  const DivMatrix a =
      DivMatrix::from_real(kR, 2, 2, std::vector<double>{1, 2, 3, 4});
  const DivMatrix b =
      DivMatrix::from_real(kR, 2, 2, std::vector<double>{5, 6, 7, 8});
  const DivMatrix c = matmul(a, b);
  CHECK(c(0, 0).re() == 19);
  CHECK(c(0, 1).re() == 22);
  CHECK(c(1, 0).re() == 43);
  CHECK(c(1, 1).re() == 50);

  CHECK_THROWS_AS(matmul(a, DivMatrix(kR, 3, 1)), DimensionMismatch);
  CHECK_THROWS_AS(matmul(a, DivMatrix(kC, 2, 2)), DimensionMismatch);
  CHECK_THROWS_AS(matmul(DivMatrix(kO, 2, 2), DivMatrix(kO, 2, 2)), Unsupported);
  CHECK_NOTHROW(matmul(DivMatrix(kO, 1, 1), DivMatrix(kO, 1, 1)));
}

TEST_CASE("cholesky") {
  const DivMatrix id = DivMatrix::identity(kH, 3);
  CHECK(max_abs_diff(cholesky_lower(id), id) == 0.0);

  const DivMatrix two = DivMatrix::from_real(kR, 1, 1, std::vector<double>{2});
  CHECK(cholesky_lower(two)(0, 0).re() == doctest::Approx(std::sqrt(2.0)));

  // [[2, q], [conj q, 2]] with q = e1 + e2.
  const DivMatrix a =
      coeff_matrix(kH, 2, 2, {2, 0, 0, 0, 0, 1, 1, 0, 0, -1, -1, 0, 2, 0, 0, 0});
  const DivMatrix l = cholesky_lower(a);
  CHECK(max_abs_diff(matmul(l, conj_transpose(l)), a) < 1e-12);
  CHECK(logdet_hpd(HermitianPD(a)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  const DivMatrix indefinite =
      DivMatrix::from_real(kR, 2, 2, std::vector<double>{1, 2, 2, 1});
  CHECK_THROWS_AS(cholesky_lower(indefinite), NotPositiveDefinite);
  CHECK_THROWS_AS(HermitianPD{indefinite}, NotPositiveDefinite);
  CHECK_THROWS_AS(
      HermitianPD(DivMatrix::from_real(kR, 2, 2, std::vector<double>{2, 1, 0, 2})),
      DomainError);
}

TEST_CASE("log determinant") {
  CHECK(HermitianPD::identity(kC, 4).logdet() == 0.0);
  CHECK(logdet_hpd(HermitianPD(DivMatrix::diagonal(kR, std::vector<double>{2, 3}))) ==
        doctest::Approx(std::log(6.0)));
}

TEST_CASE("HermitianPD inverse") {
  const DivMatrix a =
      coeff_matrix(kC, 2, 2, {2, 0, 0.3, -0.4, 0.3, 0.4, 1.5, 0});
  const HermitianPD h(a);
  const DivMatrix prod = matmul(h.mat(), h.inverse().mat());
  CHECK(max_abs_diff(prod, DivMatrix::identity(kC, 2)) < 1e-14);
  CHECK(h.inverse().logdet() == doctest::Approx(-h.logdet()).epsilon(1e-14));
}

TEST_CASE("complex adjoint") {
  const DivMatrix x =
      DivMatrix::from_real(kR, 2, 2, std::vector<double>{1, 2, 3, 4});
  const DivMatrix ax = complex_adjoint(x);
  CHECK(ax.rows() == 2);
  CHECK(ax(1, 0).re() == 3.0);

  // q with |q| = 2: the block determinant is w^2 + x^2 + y^2 + z^2 = 4.
  const DivMatrix q = coeff_matrix(kH, 1, 1, {1, 1, 1, 1});
  const DivMatrix b = complex_adjoint(q);
  REQUIRE(b.rows() == 2);
  const DivScalar det = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
  CHECK(det.re() == doctest::Approx(4.0));
  CHECK(std::abs(det[1]) < 1e-15);

  // Multiplicative.
  const DivMatrix p = coeff_matrix(kH, 2, 1, {0.3, -1, 2, 0.5, 1, 0, -0.4, 0.2});
  const DivMatrix r = coeff_matrix(kH, 1, 2, {1, 2, 3, 4, -0.5, 0.1, 0.7, -2});
  CHECK(max_abs_diff(complex_adjoint(matmul(p, r)),
                     matmul(complex_adjoint(p), complex_adjoint(r))) < 1e-13);

  CHECK_THROWS_AS(complex_adjoint(DivMatrix(kO, 1, 1)), Unsupported);
}

TEST_CASE("singular values") {
  const DivMatrix x = DivMatrix::from_real(
      kR, 2, 3, std::vector<double>{3, 0, 0, 0, 1, 0});
  const auto sv = singular_values(x);
  REQUIRE(sv.size() == 2);
  CHECK(sv[0] == doctest::Approx(3.0));
  CHECK(sv[1] == doctest::Approx(1.0));

  const auto sq = singular_values(coeff_matrix(kH, 1, 1, {1, 1, 1, 1}));
  REQUIRE(sq.size() == 1);
  CHECK(sq[0] == doctest::Approx(2.0));

  // Unitary invariance over H.
  const DivMatrix y = coeff_matrix(
      kH, 2, 2, {0.3, -0.2, 0.5, 0.1, 0.0, 0.4, -0.1, 0.7, -0.6, 0.1, 0.2, 0.0,
                 0.25, -0.35, 0.45, -0.15});
  const DivMatrix u = quaternion_unitary(0.4, random_scalar(kH, 1),
                                         random_scalar(kH, 2));
  const DivMatrix w = quaternion_unitary(-1.1, random_scalar(kH, 3),
                                         random_scalar(kH, 4));
  const auto s0 = singular_values(y);
  const auto s1 = singular_values(matmul(matmul(u, y), w));
  REQUIRE(s1.size() == 2);
  CHECK(std::abs(s0[0] - s1[0]) < 1e-10);
  CHECK(std::abs(s0[1] - s1[1]) < 1e-10);
}

TEST_CASE("hermitian eigenvalues") {
  const auto d = hermitian_eigenvalues(DivMatrix::diagonal(kR, std::vector<double>{5, 2}));
  CHECK(d[0] == doctest::Approx(5.0));
  CHECK(d[1] == doctest::Approx(2.0));

  const DivMatrix a = coeff_matrix(kC, 2, 2, {2, 0, 0, 1, 0, -1, 2, 0});
  const auto e = hermitian_eigenvalues(a);
  CHECK(e[0] == doctest::Approx(3.0));
  CHECK(e[1] == doctest::Approx(1.0));

  // Quaternion: eigenvalues are 2 +- |q| for [[2, q], [conj q, 2]].
  const DivMatrix h =
      coeff_matrix(kH, 2, 2, {2, 0, 0, 0, 0, 1, 1, 0, 0, -1, -1, 0, 2, 0, 0, 0});
  const auto eh = hermitian_eigenvalues(h);
  REQUIRE(eh.size() == 2);
  CHECK(eh[0] == doctest::Approx(2.0 + std::numbers::sqrt2));
  CHECK(eh[1] == doctest::Approx(2.0 - std::numbers::sqrt2));

  CHECK_THROWS_AS(hermitian_eigenvalues(DivMatrix::from_real(
                      kR, 2, 2, std::vector<double>{1, 2, 0, 1})),
                  DomainError);
}
