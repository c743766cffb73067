#include <cmath>
#include <doctest.h>

#include "casg/constants.hpp"
#include "casg/planar.hpp"
#include "casg/quadrature.hpp"

using namespace casg;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const auto q = gauss_legendre(8);
  double s0 = 0.0, s8 = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    s0 += q.w[i];
    s8 += q.w[i] * std::pow(q.x[i], 8);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s8 == doctest::Approx(2.0 / 9.0).epsilon(1e-13));

  const auto qm = gauss_legendre(16, 0.0, 3.0);
  double se = 0.0;
  for (std::size_t i = 0; i < qm.x.size(); ++i) se += qm.w[i] * std::exp(-qm.x[i]);
  CHECK(se == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-13));
}

TEST_CASE("gauss-laguerre handles exponential-decay integrands") {
  const auto q = gauss_laguerre(24);
  double s3 = 0.0, sdecay = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    s3 += q.w[i] * std::exp(-q.x[i]) * q.x[i] * q.x[i] * q.x[i];
    sdecay += q.w[i] * std::exp(-q.x[i]) / (1.0 + q.x[i]);
  }
  CHECK(s3 == doctest::Approx(6.0).epsilon(1e-12));
  // int_0^inf e^-x/(1+x) dx = e * E_1(1) = 0.596347362323194...
  CHECK(sdecay == doctest::Approx(0.5963473623231940).epsilon(1e-9));
}

TEST_CASE("laguerre weights stay finite at larger n") {
  for (const int n : {48, 96, 160}) {
    const auto q = gauss_laguerre(n);
    double s = 0.0;
    for (std::size_t i = 0; i < q.x.size(); ++i) {
      CHECK(std::isfinite(q.w[i]));
      CHECK(q.x[i] > 0.0);
      s += q.w[i] * std::exp(-q.x[i]);
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("t0 frequency panels integrate a casimir-like integrand") {
  // int_0^inf A(xi) e^{-2 xi L / c} dxi with A smooth; exact for A = 1:
  // c / (2L).
  const double L = 1e-6;
  const auto q = t0_frequency_nodes(32, L);
  double s = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i)
    s += q.w[i] * std::exp(-2.0 * q.x[i] * L / speed_of_light);
  CHECK(s == doctest::Approx(speed_of_light / (2.0 * L)).epsilon(1e-9));
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec q;
  CHECK_NOTHROW(q.validate());
  q.kx_nodes = 1;
  CHECK_THROWS_AS(q.validate(), Error);
  q = {};
  q.rel_tol = 0.0;
  CHECK_THROWS_AS(q.validate(), Error);
  q = {};
  q.orders = -1;
  CHECK_THROWS_AS(q.validate(), Error);

  QuadratureSpec a, b;
  CHECK(a.fingerprint() == b.fingerprint());
  b.ky_nodes += 1;
  CHECK(a.fingerprint() != b.fingerprint());
}
