#include "casg/engine.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "casg/planar.hpp"

namespace casg {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace detail {
double normalization_perturbation = 1.0;
}

namespace {

struct NodeResult {
  double value = 0.0;
  double condition = 0.0;
  double imag_residual = 0.0;
};

// Grating reflection as a real matrix; records the imaginary residue that
// the realness invariant bounds.
MatrixXd real_grating_reflection(const GratingSpec& grating, double xi,
                                 const BlochWavevector& k, int N, double xi_zero_proxy,
                                 double& condition, double& imag_residual) {
  const double xi_eval = std::max(xi, xi_zero_proxy);
  const GratingOperators ops =
      grating_scatter(grating, std::complex<double>(0.0, xi_eval), k, N);
  condition = std::max(condition, ops.condition);
  if (!ops.real_path) {
    const double scale = ops.reflection.matrix.cwiseAbs().maxCoeff();
    if (scale > 0.0) {
      const double resid = ops.reflection.matrix.imag().cwiseAbs().maxCoeff() / scale;
      imag_residual = std::max(imag_residual, resid);
    }
  }
  return ops.reflection.matrix.real();
}

VectorXd kappa_vector(double eps_gap, double xi, const BlochWavevector& k, int N,
                      double period) {
  const int P = 2 * N + 1;
  VectorXd kap(2 * P);
  for (int m = 0; m < P; ++m) {
    const double alpha = k.kx + (m - N) * 2.0 * pi / period;
    kap(m) = kappa_imag(eps_gap, xi, alpha, k.ky);
    kap(m + P) = kap(m);
  }
  return kap;
}

NodeResult trace_node(double xi, const BlochWavevector& k, double L,
                      const PlanarStack& stack, const GratingSpec& grating, int N,
                      double xi_zero_proxy) {
  NodeResult out;
  const MatrixXd Rg =
      real_grating_reflection(grating, xi, k, N, xi_zero_proxy, out.condition,
                              out.imag_residual);
  const MatrixXd Rp = fresnel_operator(stack, xi, k, N, grating.period);
  const double eps_gap = xi > 0.0 ? stack.gap.eval_imag(xi) : stack.gap.eps_zero();
  const VectorXd kap = kappa_vector(eps_gap, xi, k, N, grating.period);
  VectorXd tr(kap.size());
  for (Eigen::Index i = 0; i < kap.size(); ++i) {
    double v = std::exp(-kap(i) * L);
    tr(i) = v < 1e-300 ? 0.0 : v;
  }

  const MatrixXd RpE = Rp * tr.asDiagonal();
  const MatrixXd GE = Rg * tr.asDiagonal();
  const MatrixXd M = RpE * GE;
  // d_L M = -(kappa M + Rp E Rg kappa E); kappa is order-scalar so it
  // commutes with the order-diagonal plate blocks.
  MatrixXd dM = kap.asDiagonal() * M;
  dM.noalias() += RpE * (Rg * (kap.cwiseProduct(tr)).asDiagonal());
  dM = -dM;

  const Eigen::Index n2 = M.rows();
  Eigen::PartialPivLU<MatrixXd> lu(MatrixXd::Identity(n2, n2) - M);
  {
    const auto d = lu.matrixLU().diagonal().cwiseAbs().eval();
    const double mn = d.minCoeff();
    if (mn <= 0.0)
      fail(Status::conditioning, "integrand: (1 - M) is singular (round trip not contractive)");
    out.condition = std::max(out.condition, d.maxCoeff() / mn);
  }
  out.value = lu.solve(dM).trace();
  return out;
}

struct FrequencyIntegral {
  double value = 0.0;
  double condition = 0.0;
  double imag_residual = 0.0;
};

// iint tr((1-M)^{-1} d_L M) dkx dky over the full Brillouin zone and the
// whole ky axis (quarter-domain computed, reflection symmetries doubled).
// Node tasks run in parallel into preallocated slots; the reduction is a
// fixed-order serial sum so results are bit-identical for any thread count.
FrequencyIntegral frequency_integral(double xi, double L, const PlanarStack& stack,
                                     const GratingSpec& grating, int N,
                                     const QuadratureSpec& quad,
                                     const QuadratureNodes& qx, const QuadratureNodes& qy,
                                     double ky_beta) {
  const int nx = static_cast<int>(qx.x.size());
  const int ny = static_cast<int>(qy.x.size());
  const int total = nx * ny;
  std::vector<NodeResult> slots(total);

  int nthreads = quad.threads;
#ifdef _OPENMP
  if (nthreads <= 0) nthreads = omp_get_max_threads();
#else
  nthreads = 1;
#endif

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nthreads)
#endif
  for (int t = 0; t < total; ++t) {
    const int i = t / ny;
    const int j = t % ny;
    BlochWavevector k;
    k.kx = qx.x[i];
    k.ky = qy.x[j] / ky_beta;
    slots[t] = trace_node(xi, k, L, stack, grating, N, quad.xi_zero_proxy);
  }

  FrequencyIntegral out;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const NodeResult& r = slots[i * ny + j];
      out.value += qx.w[i] * (qy.w[j] / ky_beta) * r.value;
      out.condition = std::max(out.condition, r.condition);
      out.imag_residual = std::max(out.imag_residual, r.imag_residual);
    }
  out.value *= 4.0;  // kx and ky reflection symmetries
  return out;
}

void validate_inputs(double L, const PlanarStack& stack, const GratingSpec& grating,
                     const QuadratureSpec& quad) {
  if (!(L > 0.0)) fail(Status::domain_error, "force: L must be > 0");
  grating.validate();
  quad.validate();
  if (stack.gap.is_perfect_mirror())
    fail(Status::unsupported, "gap material cannot be a perfect mirror");
}

ForcePoint force_fixed_orders(double L, double T, const PlanarStack& stack,
                              const GratingSpec& grating, const QuadratureSpec& quad,
                              int N) {
  ForcePoint fp;
  fp.L = L;
  fp.T = T;
  fp.diagnostics.orders_used = N;
  fp.diagnostics.quad_fingerprint = quad.fingerprint();

  const QuadratureNodes qx = gauss_legendre(quad.kx_nodes, 0.0, pi / grating.period);
  const QuadratureNodes qy = gauss_laguerre(quad.ky_nodes);
  const double ky_beta = quad.ky_scale > 0.0 ? 1.0 / quad.ky_scale : 2.0 * L;

  if (T == 0.0) {
    const QuadratureNodes xiq = t0_frequency_nodes(quad.xi_nodes, L);
    const double pref =
        -hbar / (8.0 * pi * pi * pi) * detail::normalization_perturbation;
    for (std::size_t q = 0; q < xiq.x.size(); ++q) {
      const FrequencyIntegral I =
          frequency_integral(xiq.x[q], L, stack, grating, N, quad, qx, qy, ky_beta);
      fp.per_n_terms.push_back(pref * xiq.w[q] * I.value);
      fp.pressure += fp.per_n_terms.back();
      fp.diagnostics.worst_condition = std::max(fp.diagnostics.worst_condition, I.condition);
      fp.diagnostics.max_imag_residual =
          std::max(fp.diagnostics.max_imag_residual, I.imag_residual);
    }
    fp.diagnostics.matsubara_terms = static_cast<int>(xiq.x.size());
    fp.diagnostics.converged = true;
    return fp;
  }

  const double pref =
      -k_boltzmann * T / (4.0 * pi * pi) * detail::normalization_perturbation;
  const double xi1 = matsubara_step_per_kelvin * T;
  const double xi_stop = 5.0 * speed_of_light / (2.0 * L);
  const int cap = std::min(quad.matsubara_cap, 2000);

  const FrequencyIntegral I0 =
      frequency_integral(0.0, L, stack, grating, N, quad, qx, qy, ky_beta);
  fp.per_n_terms.push_back(0.5 * pref * I0.value);
  fp.pressure = fp.per_n_terms.back();
  fp.diagnostics.worst_condition = I0.condition;
  fp.diagnostics.max_imag_residual = I0.imag_residual;

  double prev_term = 0.0;
  for (int n = 1; n <= cap; ++n) {
    const FrequencyIntegral In =
        frequency_integral(n * xi1, L, stack, grating, N, quad, qx, qy, ky_beta);
    const double term = pref * In.value;
    fp.per_n_terms.push_back(term);
    fp.pressure += term;
    fp.diagnostics.worst_condition = std::max(fp.diagnostics.worst_condition, In.condition);
    fp.diagnostics.max_imag_residual =
        std::max(fp.diagnostics.max_imag_residual, In.imag_residual);

    if (std::abs(term) < quad.rel_tol * std::abs(fp.pressure) && n * xi1 > xi_stop) {
      // geometric tail bound from the last two terms
      double tail = std::abs(term);
      if (prev_term != 0.0) {
        const double r = std::abs(term) / std::abs(prev_term);
        if (r < 1.0) tail = std::abs(term) * r / (1.0 - r);
      }
      fp.diagnostics.tail_estimate = tail;
      fp.diagnostics.converged = tail < quad.rel_tol * std::abs(fp.pressure);
      if (fp.diagnostics.converged) break;
    }
    prev_term = term;
  }
  fp.diagnostics.matsubara_terms = static_cast<int>(fp.per_n_terms.size());
  if (!fp.diagnostics.converged)
    fail(Status::convergence_failure,
         "force_pressure: Matsubara sum not converged within the hard cap");
  return fp;
}

ForcePoint force_with_escalation(double L, double T, const PlanarStack& stack,
                                 const GratingSpec& grating, const QuadratureSpec& quad) {
  validate_inputs(L, stack, grating, quad);
  ForcePoint fp = force_fixed_orders(L, T, stack, grating, quad, quad.orders);
  if (!quad.auto_orders) return fp;
  int N = quad.orders;
  while (N + 4 <= quad.max_orders) {
    ForcePoint next = force_fixed_orders(L, T, stack, grating, quad, N + 4);
    const double change = std::abs(next.pressure - fp.pressure);
    fp = std::move(next);
    N += 4;
    if (change <= quad.escalation_tol * std::abs(fp.pressure)) break;
  }
  return fp;
}

}  // namespace

Eigen::MatrixXd roundtrip(double xi, const BlochWavevector& k, double L,
                          const PlanarStack& stack, const GratingSpec& grating, int N,
                          double xi_zero_proxy) {
  double cond = 0.0, resid = 0.0;
  const MatrixXd Rg = real_grating_reflection(grating, xi, k, N, xi_zero_proxy, cond, resid);
  const MatrixXd Rp = fresnel_operator(stack, xi, k, N, grating.period);
  const double eps_gap = xi > 0.0 ? stack.gap.eval_imag(xi) : stack.gap.eps_zero();
  const VectorXd kap = kappa_vector(eps_gap, xi, k, N, grating.period);
  VectorXd tr(kap.size());
  for (Eigen::Index i = 0; i < kap.size(); ++i) {
    double v = std::exp(-kap(i) * L);
    tr(i) = v < 1e-300 ? 0.0 : v;
  }
  return Rp * tr.asDiagonal() * Rg * tr.asDiagonal();
}

double integrand_trace(double xi, const BlochWavevector& k, double L,
                       const PlanarStack& stack, const GratingSpec& grating, int N,
                       double xi_zero_proxy) {
  return trace_node(xi, k, L, stack, grating, N, xi_zero_proxy).value;
}

ForcePoint force_pressure(double L, double T, const PlanarStack& stack,
                          const GratingSpec& grating, const QuadratureSpec& quad) {
  if (!(T > 0.0)) fail(Status::domain_error, "force_pressure: T must be > 0 (see force_pressure_T0)");
  return force_with_escalation(L, T, stack, grating, quad);
}

ForcePoint force_pressure_T0(double L, const PlanarStack& stack, const GratingSpec& grating,
                             const QuadratureSpec& quad) {
  return force_with_escalation(L, 0.0, stack, grating, quad);
}

}  // namespace casg
