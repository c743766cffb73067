#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "casg/geometry.hpp"
#include "casg/planar.hpp"

namespace casg {

// Reflection (or transmission) operator of one scatterer at one
// (frequency, kx, ky). 2(2N+1) square in the (e,h) polarization basis over
// diffraction orders -N..N: blocks [[R^(e)(s=e), R^(e)(s=h)],
// [R^(h)(s=e), R^(h)(s=h)]]. The e/h amplitudes are the (E_y, H_y) pair of
// each Rayleigh order. At purely imaginary frequency with real eps(i xi)
// every entry is real.
struct ScatterOperator {
  std::complex<double> frequency{0.0, 0.0};  // Omega, rad/s
  int order_count = 0;                       // 2N+1
  Eigen::MatrixXcd matrix;
};

// Toeplitz matrices of eps(x) and 1/eps(x), each (2N+1) square, lamellar
// closed form with the ridge centered at x = 0 (real symmetric coefficients).
struct ToeplitzPair {
  Eigen::MatrixXcd eps;
  Eigen::MatrixXcd inv_eps;  // Toeplitz of 1/eps(x), not the matrix inverse
};
ToeplitzPair fourier_toeplitz(const GratingSpec& spec, std::complex<double> frequency,
                              int N);

// Off-diagonal blocks M1, M2 of the Fourier-space Maxwell system
// d/dz (e; h) = ((0, M1), (M2, 0)) (e; h), with the inverse rule applied in
// the lower-left (h_y') block. Each 2(2N+1) square.
struct MaxwellBlocks {
  Eigen::MatrixXcd M1;
  Eigen::MatrixXcd M2;
  double condition = 0.0;  // worst LU pivot-ratio proxy of the Toeplitz inversions
};
MaxwellBlocks build_maxwell_blocks(const GratingSpec& spec, std::complex<double> frequency,
                                   const BlochWavevector& k, int N);

// Eigendecomposition of M^(e) = M1 M2 with the decaying square-root branch
// (Re sqrt >= 0, ties broken by Im >= 0).
struct HelmholtzModes {
  Eigen::MatrixXcd phi;
  Eigen::VectorXcd lambda;
  Eigen::VectorXcd sqrt_lambda;
  double condition = 0.0;  // eigenvector-matrix conditioning proxy
  bool real_valued = false;
};
HelmholtzModes helmholtz_eigen(const Eigen::MatrixXcd& M1, const Eigen::MatrixXcd& M2);

// Rayleigh-side matching matrices at z = 0 (region I) and z = -a (region
// III); all 2(2N+1) square, (e,h)-rows by (e,h)-columns.
struct BoundaryMatrices {
  Eigen::MatrixXcd t_e, t_h;  // region III fields from (T^(e); T^(h))
  Eigen::MatrixXcd r_e, r_h;  // reflected fields from (R^(e); R^(h))
  Eigen::MatrixXcd i_e, i_h;  // incident fields from (I^(e); I^(h))
  Eigen::VectorXcd gamma_i, gamma_t;
};
BoundaryMatrices boundary_matrices(const GratingSpec& spec, std::complex<double> frequency,
                                   const BlochWavevector& k, int N);

struct GratingOperators {
  ScatterOperator reflection;
  ScatterOperator transmission;
  double condition = 0.0;
  bool real_path = false;  // solved in real arithmetic (imaginary frequency)
};

// Full RCWA solve; at depth = 0 the reflection reduces analytically to the
// superstrate/substrate interface operator (handles perfect-mirror
// substrates exactly) and the transmission to the planar one.
GratingOperators grating_scatter(const GratingSpec& spec, std::complex<double> frequency,
                                 const BlochWavevector& k, int N);
ScatterOperator grating_reflection(const GratingSpec& spec, std::complex<double> frequency,
                                   const BlochWavevector& k, int N);
ScatterOperator grating_transmission(const GratingSpec& spec, std::complex<double> frequency,
                                     const BlochWavevector& k, int N);

enum class Polarization { e, h };

// Real-frequency validation harness: per-order reflected / transmitted
// power efficiencies for a lossless grating in the classical mount
// (ky = 0). Refuses lossy materials.
struct Efficiencies {
  std::vector<int> orders;
  std::vector<double> reflected;
  std::vector<double> transmitted;
  double total_reflected = 0.0;
  double total_transmitted = 0.0;
};
Efficiencies diffraction_efficiencies(const GratingSpec& spec, double omega,
                                      double theta_incidence, int N, Polarization pol);

}  // namespace casg
