#pragma once

#include <Eigen/Dense>
#include <complex>

#include "casg/geometry.hpp"
#include "casg/quadrature.hpp"

namespace casg {

// kappa = sqrt(eps_i xi^2/c^2 + alpha^2 + ky^2), the imaginary-axis
// z-wavevector in the gap.
double kappa_imag(double eps_gap, double xi, double alpha, double ky);

// Fresnel coefficients at imaginary frequency for gap (eps_i, kappa) against
// a plate (eps_p, kappa_p); perfect mirror returns exactly (-1, +1).
struct FresnelPair {
  double r_te = 0.0;
  double r_tm = 0.0;
};
FresnelPair fresnel_imag(const PermittivityModel& gap, const PermittivityModel& plate,
                         double xi, double alpha, double ky);

enum class Incidence { upgoing, downgoing };

// Exact 2x2 reflection block in the (E_y, H_y) amplitude pair for a single
// planar interface, order-local. freq_reduced = Omega/c (purely imaginary
// i*xi/c on the Casimir path, real omega/c on the validation path).
// Direction matters: the off-diagonal (polarization-mixing) entries flip
// sign between up-going (plate) and down-going (grating-side) incidence.
// eps2_infinite selects the perfect-mirror boundary (block = diag(-1, +1)).
Eigen::Matrix2cd interface_block_eh(std::complex<double> eps1, std::complex<double> eps2,
                                    std::complex<double> freq_reduced, double alpha,
                                    double ky, Incidence dir, bool eps2_infinite = false);

// Plate reflection operator in the (e,h) basis over diffraction orders
// -N..N (block-2x2 per order, up-going incidence), at imaginary frequency.
// Entries are real there; xi = 0 uses the exact zero-frequency limits
// (Drude TE -> 0; perfect mirror stays diag(-1, +1)).
Eigen::MatrixXd fresnel_operator(const PlanarStack& stack, double xi,
                                 const BlochWavevector& k, int N, double period);

// diag(e^{-kappa_n L}) over orders, duplicated on both polarization blocks.
Eigen::VectorXd translation_diagonal(double eps_gap, double xi, const BlochWavevector& k,
                                     double L, int N, double period);

struct LifshitzOptions {
  int k_nodes = 64;       // Gauss-Laguerre transverse nodes
  int xi_nodes = 48;      // T = 0 frequency nodes (3-panel scheme)
  double rel_tol = 1e-9;  // Matsubara tail stopping
  int matsubara_cap = 5000;
};

// Plane-plane pressure between half-spaces mat_a and mat_b across a gap of
// width L filled with gap material, via the standard Matsubara / k-integral
// with Fresnel coefficients. Positive = attractive. T = 0 switches to the
// frequency integral. Wholly independent of the RCWA path; serves as its
// a = 0 oracle and as the PFA workhorse.
double lifshitz_pressure(double L, double T, const PermittivityModel& mat_a,
                         const PermittivityModel& mat_b, const PermittivityModel& gap,
                         const LifshitzOptions& opt = {});

// Internal frequency panels of the T = 0 integral (also used by the engine):
// [0, xa] linear toe, [xa, 3s] log-space Gauss-Legendre, [3s, inf) Laguerre,
// with s = c/(2L) and xa = 3s * 1e-8.
QuadratureNodes t0_frequency_nodes(int n, double L);

}  // namespace casg
