#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rdmt/special.hpp"
#include "test_util.hpp"

using namespace rdmt;
using rdmt::test::close;

namespace {

const AlgebraTag kR = AlgebraTag::real();
const AlgebraTag kC = AlgebraTag::complex();
const AlgebraTag kH = AlgebraTag::quaternion();
const AlgebraTag kO = AlgebraTag::octonion();

// mpmath.loggamma at 40 digits (tests/oracles/make_oracles.py).
struct Ref {
  double x;
  double value;
};
constexpr Ref kLogGamma[] = {
    {0.5, 0.57236494292470008707},  {0.75, 0.20328095143129537148},
    {1, 0.0},                       {1.5, -0.12078223763524522235},
    {2.5, 0.28468287047291915963},  {3.3, 0.98709857789473440406},
    {5, 3.1780538303479456196},     {7.25, 7.0521854507385394449},
    {10, 12.801827480081469611},    {12.5, 18.734347511936445702},
    {17.1, 30.952513766803963985},  {25, 54.78472939811231919},
    {33.3, 82.603723581654943008},  {50, 144.56574394634488601},
    {64.5, 203.08680483582812261},  {80, 269.29109765101982254},
    {100.25, 360.28455963776423497}, {128, 491.5534482232980035},
    {150.5, 602.51395487058541195}, {200, 857.93366982585743682},
};

struct MvRef {
  int beta;
  int m;
  double a;
  double value;
};
constexpr MvRef kLogMvGamma[] = {
    {1, 3, 2.2, 1.6328605081543574058}, {2, 3, 4.1, 6.1857796741315101468},
    {4, 2, 3.7, 3.62172440095712265},   {8, 2, 5.5, 8.4159512733810717681},
    {4, 4, 9.25, 36.4295220423784763},
};

}  // namespace

TEST_CASE("log_gamma against mpmath") {
  for (const Ref& r : kLogGamma) {
    INFO("x = " << r.x);
    CHECK(close(log_gamma(r.x), r.value, 1e-13));
  }
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_gamma(0.1) == doctest::Approx(std::lgamma(0.1)).epsilon(1e-13));
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-2.5), DomainError);
}

TEST_CASE("log_mvgamma") {
  for (AlgebraTag tag : {kR, kC, kH, kO}) {
    CHECK(log_mvgamma(tag, 1, 0.5) ==
          doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
  }
  CHECK(log_mvgamma(kR, 2, 2.0) ==
        doctest::Approx(std::log(std::numbers::pi / 2)).epsilon(1e-14));
  CHECK(log_mvgamma(kH, 2, 3.0) ==
        doctest::Approx(std::log(2 * std::numbers::pi * std::numbers::pi))
            .epsilon(1e-14));
  for (const MvRef& r : kLogMvGamma) {
    INFO("beta " << r.beta << " m " << r.m << " a " << r.a);
    CHECK(close(log_mvgamma(AlgebraTag::from_beta(r.beta), r.m, r.a), r.value,
                1e-13));
  }
  // a must exceed (m - 1) beta / 2.
  CHECK_THROWS_AS(log_mvgamma(kR, 2, 0.5), DomainError);
  CHECK_THROWS_AS(log_mvgamma(kH, 3, 4.0), DomainError);
  CHECK_THROWS_AS(log_mvgamma(kR, 0, 2.0), DomainError);
}

TEST_CASE("log_mvbeta") {
  CHECK(log_mvbeta(kR, 1, 2.0, 3.5) ==
        doctest::Approx(std::lgamma(2.0) + std::lgamma(3.5) - std::lgamma(5.5))
            .epsilon(1e-13));
  CHECK(log_mvbeta(kR, 2, 1.5, 1.5) ==
        doctest::Approx(std::log(std::numbers::pi / 6)).epsilon(1e-14));
}

TEST_CASE("stiefel volume") {
  const double two_pi = 2 * std::numbers::pi;
  CHECK(stiefel_log_volume(kR, 1, 2) == doctest::Approx(std::log(two_pi)));
  CHECK(stiefel_log_volume(kR, 1, 3) ==
        doctest::Approx(std::log(4 * std::numbers::pi)));
  CHECK(stiefel_log_volume(kC, 1, 1) == doctest::Approx(std::log(two_pi)));
  // |S^7| = pi^4 / 3.
  CHECK(stiefel_log_volume(kO, 1, 1) ==
        doctest::Approx(std::log(std::pow(std::numbers::pi, 4) / 3)));
  CHECK_THROWS_AS(stiefel_log_volume(kR, 3, 2), DomainError);
}

TEST_CASE("tau table") {
  CHECK(tau(kR, 3) == 0);
  CHECK(tau(kC, 3) == -3);
  CHECK(tau(kH, 3) == -6);
  CHECK(tau(kO, 1) == -4);
}

TEST_CASE("gamma ratio identity") {
  CHECK(log_gamma_ratio_identity_gap(kR, 3, 3, 4.5) == 0.0);
  CHECK(std::abs(log_gamma_ratio_identity_gap(kC, 2, 3, 4.0)) < 1e-10);
  CHECK(std::abs(log_gamma_ratio_identity_gap(kO, 2, 3, 10.0)) < 1e-10);
  CHECK(std::abs(log_gamma_ratio_identity_gap(kH, 5, 2, 7.25)) < 1e-10);
}
