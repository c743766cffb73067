#include "casg/planar.hpp"

#include <cmath>

namespace casg {

using cd = std::complex<double>;

double kappa_imag(double eps_gap, double xi, double alpha, double ky) {
  const double q = xi / speed_of_light;
  return std::sqrt(eps_gap * q * q + alpha * alpha + ky * ky);
}

FresnelPair fresnel_imag(const PermittivityModel& gap, const PermittivityModel& plate,
                         double xi, double alpha, double ky) {
  if (plate.is_perfect_mirror()) return {-1.0, 1.0};
  const double eps_i = xi > 0.0 ? gap.eval_imag(xi) : gap.eps_zero();
  const double kap = kappa_imag(eps_i, xi, alpha, ky);
  FresnelPair out;
  if (xi == 0.0) {
    // Exact xi -> 0+ limits: eps_p xi^2 -> 0 for any Drude-type or finite
    // model, so kappa_p -> kappa and r_TE -> 0.
    out.r_te = 0.0;
    if (plate.diverges_at_zero()) {
      out.r_tm = 1.0;
    } else {
      const double ep = plate.eps_zero();
      out.r_tm = (ep - eps_i) / (ep + eps_i);
    }
    return out;
  }
  const double eps_p = plate.eval_imag(xi);
  const double kap_p = kappa_imag(eps_p, xi, alpha, ky);
  out.r_te = (kap - kap_p) / (kap + kap_p);
  out.r_tm = (eps_p * kap - eps_i * kap_p) / (eps_p * kap + eps_i * kap_p);
  return out;
}

namespace {

cd gamma_branch(cd eps, cd w, double alpha, double ky) {
  cd g = std::sqrt(eps * w * w - alpha * alpha - ky * ky);
  if (g.imag() < 0.0) g = -g;
  return g;
}

}  // namespace

Eigen::Matrix2cd interface_block_eh(cd eps1, cd eps2, cd w, double alpha, double ky,
                                    Incidence dir, bool eps2_infinite) {
  if (eps2_infinite) {
    // E_tan = 0 boundary: E_y flips, H_y preserved, never any mixing.
    Eigen::Matrix2cd r;
    r << -1.0, 0.0, 0.0, 1.0;
    return r;
  }
  const cd D1 = eps1 * w * w - ky * ky;
  const cd D2 = eps2 * w * w - ky * ky;
  const cd g1 = gamma_branch(eps1, w, alpha, ky);
  const cd g2 = gamma_branch(eps2, w, alpha, ky);
  const cd c = ky * alpha * (1.0 / D2 - 1.0 / D1);
  const cd d1 = w * (g1 / D1 + g2 / D2);
  const cd e1 = w * (g1 / D1 - g2 / D2);
  const cd d2 = w * (eps1 * g1 / D1 + eps2 * g2 / D2);
  const cd e2 = w * (eps1 * g1 / D1 - eps2 * g2 / D2);
  Eigen::Matrix2cd lhs, rhs;
  lhs << c, d1, -d2, c;
  rhs << -c, e1, -e2, -c;
  Eigen::Matrix2cd r = lhs.partialPivLu().solve(rhs);
  if (dir == Incidence::downgoing) {
    r(0, 1) = -r(0, 1);
    r(1, 0) = -r(1, 0);
  }
  return r;
}

Eigen::MatrixXd fresnel_operator(const PlanarStack& stack, double xi,
                                 const BlochWavevector& k, int N, double period) {
  if (xi < 0.0) fail(Status::domain_error, "fresnel_operator: xi must be >= 0");
  const int P = 2 * N + 1;
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(2 * P, 2 * P);
  const bool mirror = stack.plate.is_perfect_mirror();

  for (int m = 0; m < P; ++m) {
    const double alpha = k.kx + (m - N) * 2.0 * pi / period;
    Eigen::Matrix2d blk;
    if (mirror) {
      blk << -1.0, 0.0, 0.0, 1.0;
    } else if (xi == 0.0) {
      // c-coefficient vanishes and the h slot dies with xi; the e slot
      // carries -r_TM(0). The zero-frequency trace only sees products of
      // these blocks, so the sign convention drops out.
      const FresnelPair fr = fresnel_imag(stack.gap, stack.plate, 0.0, alpha, k.ky);
      blk << -fr.r_tm, 0.0, 0.0, 0.0;
    } else {
      const double eps_i = stack.gap.eval_imag(xi);
      const double eps_p = stack.plate.eval_imag(xi);
      const cd w(0.0, xi / speed_of_light);
      const Eigen::Matrix2cd b =
          interface_block_eh(eps_i, eps_p, w, alpha, k.ky, Incidence::upgoing);
      blk = b.real();
    }
    R(m, m) = blk(0, 0);
    R(m, m + P) = blk(0, 1);
    R(m + P, m) = blk(1, 0);
    R(m + P, m + P) = blk(1, 1);
  }
  return R;
}

Eigen::VectorXd translation_diagonal(double eps_gap, double xi, const BlochWavevector& k,
                                     double L, int N, double period) {
  if (L < 0.0) fail(Status::domain_error, "translation: L must be >= 0");
  const int P = 2 * N + 1;
  Eigen::VectorXd e(2 * P);
  for (int m = 0; m < P; ++m) {
    const double alpha = k.kx + (m - N) * 2.0 * pi / period;
    const double kap = kappa_imag(eps_gap, xi, alpha, k.ky);
    double v = std::exp(-kap * L);
    if (v < 1e-300) v = 0.0;
    e(m) = v;
    e(m + P) = v;
  }
  return e;
}

QuadratureNodes t0_frequency_nodes(int n, double L) {
  if (n < 8) fail(Status::invalid_argument, "t0_frequency_nodes: need n >= 8");
  const double s = speed_of_light / (2.0 * L);
  const double xb = 3.0 * s;
  const double xa = xb * 1e-8;
  const int nA = 4;
  const int nC = std::max(8, n / 4);
  const int nB = std::max(4, n - nA - nC);

  QuadratureNodes out;
  out.x.reserve(nA + nB + nC);
  out.w.reserve(nA + nB + nC);

  QuadratureNodes qa = gauss_legendre(nA, 0.0, xa);
  for (int i = 0; i < nA; ++i) {
    out.x.push_back(qa.x[i]);
    out.w.push_back(qa.w[i]);
  }
  QuadratureNodes qb = gauss_legendre(nB, std::log(xa), std::log(xb));
  for (int i = 0; i < nB; ++i) {
    const double xi = std::exp(qb.x[i]);
    out.x.push_back(xi);
    out.w.push_back(qb.w[i] * xi);
  }
  QuadratureNodes qc = gauss_laguerre(nC);
  const double beta = 2.0 * L / speed_of_light;
  for (int i = 0; i < nC; ++i) {
    out.x.push_back(xb + qc.x[i] / beta);
    out.w.push_back(qc.w[i] / beta);
  }
  return out;
}

namespace {

// Transverse integral of the scalar Lifshitz integrand at one frequency:
// int_0^inf k dk kappa sum_sigma x/(1-x), done in kappa with Gauss-Laguerre.
double lifshitz_k_integral(double xi, double L, const PermittivityModel& mat_a,
                           const PermittivityModel& mat_b, const PermittivityModel& gap,
                           const QuadratureNodes& lag) {
  const double eps_i = xi > 0.0 ? gap.eval_imag(xi) : gap.eps_zero();
  const double kap0 = std::sqrt(eps_i) * xi / speed_of_light;
  const double beta = 2.0 * L;
  double acc = 0.0;
  for (std::size_t i = 0; i < lag.x.size(); ++i) {
    const double kap = kap0 + lag.x[i] / beta;
    if (kap == 0.0) continue;
    const double k2 = kap * kap - kap0 * kap0;
    const double kpar = std::sqrt(std::max(k2, 0.0));
    const FresnelPair ra = fresnel_imag(gap, mat_a, xi, kpar, 0.0);
    const FresnelPair rb = fresnel_imag(gap, mat_b, xi, kpar, 0.0);
    const double decay = std::exp(-2.0 * kap * L);
    double term = 0.0;
    for (const double rr : {ra.r_te * rb.r_te, ra.r_tm * rb.r_tm}) {
      const double x = rr * decay;
      term += x / (1.0 - x);
    }
    acc += lag.w[i] / beta * kap * kap * term;
  }
  return acc;
}

}  // namespace

double lifshitz_pressure(double L, double T, const PermittivityModel& mat_a,
                         const PermittivityModel& mat_b, const PermittivityModel& gap,
                         const LifshitzOptions& opt) {
  if (!(L > 0.0)) fail(Status::domain_error, "lifshitz_pressure: L must be > 0");
  if (T < 0.0) fail(Status::domain_error, "lifshitz_pressure: T must be >= 0");
  if (gap.is_perfect_mirror())
    fail(Status::unsupported, "gap material cannot be a perfect mirror");

  const QuadratureNodes lag = gauss_laguerre(opt.k_nodes);

  if (T == 0.0) {
    const QuadratureNodes xiq = t0_frequency_nodes(opt.xi_nodes, L);
    double acc = 0.0;
    for (std::size_t i = 0; i < xiq.x.size(); ++i)
      acc += xiq.w[i] * lifshitz_k_integral(xiq.x[i], L, mat_a, mat_b, gap, lag);
    return hbar / (2.0 * pi * pi) * acc;
  }

  double acc = 0.5 * lifshitz_k_integral(0.0, L, mat_a, mat_b, gap, lag);
  const double xi1 = matsubara_step_per_kelvin * T;
  const double xi_min_stop = 5.0 * speed_of_light / (2.0 * L);
  bool converged = false;
  for (int n = 1; n <= opt.matsubara_cap; ++n) {
    const double term = lifshitz_k_integral(n * xi1, L, mat_a, mat_b, gap, lag);
    acc += term;
    if (std::abs(term) < opt.rel_tol * std::abs(acc) && n * xi1 > xi_min_stop) {
      converged = true;
      break;
    }
  }
  if (!converged)
    fail(Status::convergence_failure, "lifshitz_pressure: Matsubara sum did not converge");
  return k_boltzmann * T / pi * acc;
}

}  // namespace casg
