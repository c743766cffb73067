#pragma once

#include <vector>

#include "casg/error.hpp"

namespace casg {

struct QuadratureNodes {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre on [-1, 1].
QuadratureNodes gauss_legendre(int n);
// Gauss-Legendre mapped to [a, b].
QuadratureNodes gauss_legendre(int n, double a, double b);
// Gauss-Laguerre for int_0^inf f(x) e^{-x} dx; weights do NOT include e^{-x}
// (w[i] already contains the e^{+x_i} factor), so sum w_i f(x_i) approximates
// int_0^inf f(x) dx for f decaying like e^{-x}.
QuadratureNodes gauss_laguerre(int n);

// Discretization of one force evaluation. The paper specifies the integrals;
// their discretization is ours, so everything here is configurable.
struct QuadratureSpec {
  int orders = 12;             // RCWA truncation N
  bool auto_orders = true;     // escalate N -> N+4 until the force settles
  int max_orders = 24;
  double escalation_tol = 1e-3;

  int kx_nodes = 12;           // Gauss-Legendre on [0, pi/d]
  int ky_nodes = 16;           // Gauss-Laguerre, scale 2L (or ky_scale)
  int xi_nodes = 32;           // T = 0 frequency nodes (3-panel scheme)
  double ky_scale = 0.0;       // 1/m; 0 selects 1/(2L)

  double rel_tol = 1e-6;       // Matsubara tail stop + convergence accounting
  int matsubara_cap = 2000;
  double xi_zero_proxy = 1e8;  // rad/s; grating operator for the n = 0 term
  int threads = 0;             // 0 = all hardware threads

  void validate() const {
    if (orders < 0) fail(Status::invalid_argument, "orders must be >= 0");
    if (max_orders < orders) fail(Status::invalid_argument, "max_orders < orders");
    if (kx_nodes < 2 || ky_nodes < 2 || xi_nodes < 2)
      fail(Status::invalid_argument, "node counts must be >= 2");
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
      fail(Status::invalid_argument, "rel_tol must be in (0, 1)");
    if (!(escalation_tol > 0.0 && escalation_tol < 1.0))
      fail(Status::invalid_argument, "escalation_tol must be in (0, 1)");
    if (matsubara_cap < 1) fail(Status::invalid_argument, "matsubara_cap must be >= 1");
    if (xi_zero_proxy <= 0.0) fail(Status::invalid_argument, "xi_zero_proxy must be > 0");
  }

  // Fingerprint of every field that affects results; ratio operations refuse
  // to combine force points computed under different specs.
  unsigned long long fingerprint() const;
};

}  // namespace casg
