#pragma once

// Independent oracles for the test suite. Everything here is deliberately
// written against the raw field equations (2x2 transfer matrices, scalar
// integrands, closed forms) and shares no code with the solver path it
// checks.

#include <Eigen/Dense>
#include <complex>

#include "casg/constants.hpp"

namespace oracles {

using cd = std::complex<double>;

inline cd gamma_z(cd eps, cd w, double alpha, double ky) {
  cd g = std::sqrt(eps * w * w - alpha * alpha - ky * ky);
  if (g.imag() < 0.0) g = -g;
  return g;
}

// (E_y, H_y) reflection of a stratified stack: medium eps_in on top
// (z > 0), a single layer of thickness `thick` (may be zero), then bulk
// eps_out. Incidence travels downward, matching the Rayleigh convention of
// the grating solver. Continuity of (E_y, H_y, E_x, H_x) at both faces;
// E_x, H_x follow from the curl relations
//   E_x = (i ky dx E_y + i w dz H_y) / (eps w^2 - ky^2)
//   H_x = (i ky dx H_y - i w eps dz E_y) / (eps w^2 - ky^2).
inline Eigen::Matrix2cd slab_reflection_eh(cd eps_in, cd eps_layer, cd eps_out, double thick,
                                           cd w, double alpha, double ky) {
  auto wave = [&](cd eps, cd gz) {
    const cd D = eps * w * w - ky * ky;
    Eigen::Matrix<cd, 4, 2> m;
    m << 1.0, 0.0, 0.0, 1.0, -ky * alpha / D, -w * gz / D, w * eps * gz / D, -ky * alpha / D;
    return m;
  };
  const cd g1 = gamma_z(eps_in, w, alpha, ky);
  const cd gl = gamma_z(eps_layer, w, alpha, ky);
  const cd g2 = gamma_z(eps_out, w, alpha, ky);

  const Eigen::Matrix<cd, 4, 2> Wi = wave(eps_in, -g1);
  const Eigen::Matrix<cd, 4, 2> Wr = wave(eps_in, +g1);
  const Eigen::Matrix<cd, 4, 2> Wld = wave(eps_layer, -gl);
  const Eigen::Matrix<cd, 4, 2> Wlu = wave(eps_layer, +gl);
  const Eigen::Matrix<cd, 4, 2> Wt = wave(eps_out, -g2);

  // unknowns: R(2) Ad(2) Au(2) T(2); amplitudes referenced at z=0 for the
  // layer and z=-thick for the transmitted side.
  const cd pd = std::exp(cd(0, 1) * gl * thick);   // down wave at z=-thick
  const cd pu = std::exp(-cd(0, 1) * gl * thick);  // up wave at z=-thick
  Eigen::Matrix<cd, 8, 8> A = Eigen::Matrix<cd, 8, 8>::Zero();
  Eigen::Matrix<cd, 8, 2> rhs = Eigen::Matrix<cd, 8, 2>::Zero();
  A.block<4, 2>(0, 0) = Wr;
  A.block<4, 2>(0, 2) = -Wld;
  A.block<4, 2>(0, 4) = -Wlu;
  A.block<4, 2>(4, 2) = Wld * pd;
  A.block<4, 2>(4, 4) = Wlu * pu;
  A.block<4, 2>(4, 6) = -Wt;
  rhs.block<4, 2>(0, 0) = -Wi;
  const Eigen::Matrix<cd, 8, 2> sol = A.partialPivLu().solve(rhs);
  return sol.block<2, 2>(0, 0);
}

// Ideal-mirror zero-temperature Casimir pressure.
inline double ideal_casimir_pressure(double L) {
  return casg::pi * casg::pi * casg::hbar * casg::speed_of_light / (240.0 * L * L * L * L);
}

// Scalar two-plate trace integrand at one (xi, kappa): per polarization
// -2 kappa x / (1 - x) with x = r_p r_g e^{-2 kappa L}.
inline double two_plate_trace(double kappa, double L, double r_te_p, double r_tm_p,
                              double r_te_g, double r_tm_g) {
  const double decay = std::exp(-2.0 * kappa * L);
  double acc = 0.0;
  for (const double rr : {r_te_p * r_te_g, r_tm_p * r_tm_g}) {
    const double x = rr * decay;
    acc += -2.0 * kappa * x / (1.0 - x);
  }
  return acc;
}

}  // namespace oracles
