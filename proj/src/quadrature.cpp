#include "casg/quadrature.hpp"

#include <cmath>
#include <cstring>

#include "casg/constants.hpp"

namespace casg {

QuadratureNodes gauss_legendre(int n) {
  if (n < 1) fail(Status::invalid_argument, "gauss_legendre: n must be >= 1");
  QuadratureNodes q;
  q.x.resize(n);
  q.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    q.x[i] = -z;
    q.x[n - 1 - i] = z;
    q.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    q.w[n - 1 - i] = q.w[i];
  }
  return q;
}

QuadratureNodes gauss_legendre(int n, double a, double b) {
  QuadratureNodes q = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    q.x[i] = mid + half * q.x[i];
    q.w[i] *= half;
  }
  return q;
}

QuadratureNodes gauss_laguerre(int n) {
  if (n < 1) fail(Status::invalid_argument, "gauss_laguerre: n must be >= 1");
  QuadratureNodes q;
  q.x.resize(n);
  q.w.resize(n);
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * n);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - q.x[i - 2]);
    }
    double pp = 0.0, p1 = 0.0;
    for (int it = 0; it < 200; ++it) {
      p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0 - z) * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (p1 - p2) / z;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-14 * std::max(1.0, z)) break;
    }
    q.x[i] = z;
    // weight including the e^{+x} unfolding: x / (n^2 P_{n-1}(x)^2) * e^{x}
    double pnm1 = 1.0, p2 = 0.0;
    for (int j = 0; j < n - 1; ++j) {
      const double p3 = p2;
      p2 = pnm1;
      pnm1 = ((2.0 * j + 1.0 - z) * p2 - j * p3) / (j + 1.0);
    }
    q.w[i] = std::exp(z) * z / (static_cast<double>(n) * n * pnm1 * pnm1);
  }
  return q;
}

unsigned long long QuadratureSpec::fingerprint() const {
  // FNV-1a over the value-determining fields.
  unsigned long long h = 1469598103934665603ULL;
  auto mix = [&h](const void* p, std::size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  };
  auto mixd = [&](double v) { mix(&v, sizeof v); };
  auto mixi = [&](int v) { mix(&v, sizeof v); };
  mixi(orders);
  mixi(auto_orders ? 1 : 0);
  mixi(max_orders);
  mixd(escalation_tol);
  mixi(kx_nodes);
  mixi(ky_nodes);
  mixi(xi_nodes);
  mixd(ky_scale);
  mixd(rel_tol);
  mixi(matsubara_cap);
  mixd(xi_zero_proxy);
  return h;
}

}  // namespace casg
