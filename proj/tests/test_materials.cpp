#include <cmath>
#include <cstdio>
#include <doctest.h>

#include "casg/materials.hpp"

using casg::Error;
using casg::MaterialKind;
using casg::PermittivityModel;
using casg::Status;

TEST_CASE("vacuum is 1 at any frequency") {
  const auto m = PermittivityModel::vacuum();
  CHECK(m.eval_imag(0.0) == 1.0);
  CHECK(m.eval_imag(1e12) == 1.0);
  CHECK(m.eval_real(2e15) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("drude closed form") {
  const auto m = PermittivityModel::drude(1.37e16, 4.05e13);
  // 1 + wp^2/(xi (xi + gamma)) at xi = 1e15, hand-evaluated
  CHECK(m.eval_imag(1e15) == doctest::Approx(181.3844305622297).epsilon(1e-14));
  // high-frequency transparency
  CHECK(m.eval_imag(1e22) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("drude error paths") {
  const auto m = PermittivityModel::drude(1.37e16, 4.05e13);
  CHECK_THROWS_WITH_AS(static_cast<void>(m.eval_imag(-1.0)), doctest::Contains("xi"), Error);
  try {
    m.eval_imag(0.0);
    FAIL("expected zero-frequency signal");
  } catch (const Error& e) {
    CHECK(e.status() == Status::zero_frequency_singular);
  }
  CHECK(m.diverges_at_zero());
}

TEST_CASE("two-oscillator doped silicon") {
  const auto si = PermittivityModel::doped_silicon();
  CHECK(si.eval_imag(2.47e14) == doctest::Approx(12.023769641202971).epsilon(1e-14));
  const auto intr = PermittivityModel::intrinsic_silicon();
  CHECK(intr.eps_zero() == doctest::Approx(11.87));
  CHECK_FALSE(intr.diverges_at_zero());
  CHECK(si.diverges_at_zero());

  // doping contribution dies at high xi and grows like 1/xi at low xi
  const double hi = si.eval_imag(1e18) - intr.eval_imag(1e18);
  CHECK(hi < 1e-7);
  const double d1 = si.eval_imag(1e11) - intr.eval_imag(1e11);
  const double d2 = si.eval_imag(2e11) - intr.eval_imag(2e11);
  CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("eval_imag is real >= 1 and non-increasing for shipped models") {
  const PermittivityModel models[] = {
      PermittivityModel::vacuum(),
      PermittivityModel::constant(2.25),
      PermittivityModel::gold_drude(),
      PermittivityModel::doped_silicon(),
      PermittivityModel::intrinsic_silicon(),
  };
  for (const auto& m : models) {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 1000; ++i) {
      const double xi = 1e10 * std::pow(1e8, i / 999.0);  // 1e10 .. 1e18
      const double v = m.eval_imag(xi);
      CHECK(std::isfinite(v));
      CHECK(v >= 1.0);
      CHECK(v <= prev * (1.0 + 1e-12));
      prev = v;
    }
    // limit is 1
    CHECK(m.eval_imag(1e24) == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("kramers-kronig tabulated matches analytic drude") {
  // synthetic table of the Drude loss function Im eps = wp^2 g / (w (w^2+g^2))
  const double wp = 1.37e16, g = 4.05e13;
  std::vector<std::pair<double, double>> table;
  const double lo = 1e11, hi = 1e19;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const double w = lo * std::pow(hi / lo, double(i) / (n - 1));
    table.emplace_back(w, wp * wp * g / (w * (w * w + g * g)));
  }
  const auto tab = PermittivityModel::tabulated(std::move(table), wp, g);
  const auto ref = PermittivityModel::drude(wp, g);
  for (const double xi : {1e12, 1e13, 1e14, 1e15, 1e16, 1e17}) {
    CHECK(tab.eval_imag(xi) == doctest::Approx(ref.eval_imag(xi)).epsilon(1e-3));
  }
}

TEST_CASE("tabulated csv parsing") {
  const char* path = "casg_test_table.csv";
  {
    FILE* f = std::fopen(path, "w");
    std::fputs("# frequency rad/s, Im eps\n1.0e14, 2.0\n2.0e14, 1.0\n# trailing comment\n", f);
    std::fclose(f);
  }
  const auto m = PermittivityModel::tabulated_csv(path, 0.0, 0.0);
  CHECK(m.kind() == MaterialKind::tabulated);
  CHECK(m.eval_imag(1e14) > 1.0);
  std::remove(path);

  CHECK_THROWS_AS(PermittivityModel::tabulated_csv("no_such_file.csv", 0.0, 0.0), Error);
  {
    FILE* f = std::fopen(path, "w");
    std::fputs("2.0e14, 1.0\n1.0e14, 2.0\n", f);  // descending
    std::fclose(f);
  }
  CHECK_THROWS_AS(PermittivityModel::tabulated_csv(path, 0.0, 0.0), Error);
  std::remove(path);
}

TEST_CASE("eval_real conventions") {
  CHECK(PermittivityModel::constant(4.0).eval_real(1e15) == std::complex<double>(4.0, 0.0));
  // Drude at omega = wp with gamma -> 0 is the epsilon-near-zero point
  const auto m = PermittivityModel::drude(1e16, 1e6);
  const auto e = m.eval_real(1e16);
  CHECK(std::abs(e) < 1e-6);
  // losses are non-negative
  const auto au = PermittivityModel::gold_drude();
  for (const double w : {1e14, 1e15, 1e16})
    CHECK(au.eval_real(w).imag() > 0.0);
  CHECK_THROWS_AS(static_cast<void>(au.eval_real(0.0)), Error);
  CHECK_THROWS_AS(static_cast<void>(au.eval_real(-1e15)), Error);
}

TEST_CASE("perfect mirror refuses evaluation") {
  const auto m = PermittivityModel::perfect_mirror();
  CHECK(m.is_perfect_mirror());
  CHECK_THROWS_AS(static_cast<void>(m.eval_imag(1e15)), Error);
  CHECK_THROWS_AS(static_cast<void>(m.eval_real(1e15)), Error);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(PermittivityModel::constant(0.5), Error);
  CHECK_THROWS_AS(PermittivityModel::drude(-1.0, 1.0), Error);
  CHECK_THROWS_AS(PermittivityModel::drude(1e16, 0.0), Error);
  CHECK_THROWS_AS(PermittivityModel::two_oscillator(1.0, 2.0, 1e15, 0.0, 0.0), Error);
}
