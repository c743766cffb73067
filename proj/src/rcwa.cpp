#include "casg/rcwa.hpp"

#include <cmath>

namespace casg {

using cd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

cd eval_material(const PermittivityModel& m, cd frequency) {
  if (m.is_perfect_mirror())
    fail(Status::unsupported, "perfect mirror not usable inside the RCWA solver");
  if (frequency.real() == 0.0 && frequency.imag() > 0.0)
    return cd(m.eval_imag(frequency.imag()), 0.0);
  if (frequency.imag() == 0.0 && frequency.real() > 0.0) return m.eval_real(frequency.real());
  fail(Status::unsupported, "frequency must be purely real or purely imaginary");
}

template <typename Mat>
double lu_condition_proxy(const Eigen::PartialPivLU<Mat>& lu) {
  const auto d = lu.matrixLU().diagonal().cwiseAbs().eval();
  const double mx = d.maxCoeff();
  const double mn = d.minCoeff();
  return mn > 0.0 ? mx / mn : std::numeric_limits<double>::infinity();
}

cd gamma_branch(cd eps, cd w, double alpha, double ky) {
  cd g = std::sqrt(eps * w * w - alpha * alpha - ky * ky);
  if (g.imag() < 0.0) g = -g;
  return g;
}

double flush_tiny(double v) { return std::abs(v) < 1e-300 ? 0.0 : v; }
cd flush_tiny(cd v) {
  return cd(std::abs(v.real()) < 1e-300 ? 0.0 : v.real(),
            std::abs(v.imag()) < 1e-300 ? 0.0 : v.imag());
}

// Boundary-matching and reduced-system solve, shared by the real fast path
// (imaginary frequency, everything real) and the general complex path.
template <typename Scalar>
struct ScatterSolve {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  static void run(const Mat& M1, const Mat& phi, const Vec& sqrt_lambda, const Mat& t_e,
                  const Mat& t_h, const Mat& r_e, const Mat& r_h, const Mat& i_e,
                  const Mat& i_h, double depth, Mat& R, Mat& T, double& condition) {
    const auto n2 = M1.rows();
    Vec ea(n2);
    for (Eigen::Index i = 0; i < n2; ++i)
      ea(i) = flush_tiny(Scalar(std::exp(-sqrt_lambda(i) * depth)));

    Eigen::PartialPivLU<Mat> lu_m1(M1);
    condition = std::max(condition, lu_condition_proxy(lu_m1));
    const Mat V = lu_m1.solve(phi * sqrt_lambda.asDiagonal());

    Eigen::PartialPivLU<Mat> lu_th(t_h);
    Eigen::PartialPivLU<Mat> lu_rh(r_h);
    condition = std::max(condition, lu_condition_proxy(lu_th));
    condition = std::max(condition, lu_condition_proxy(lu_rh));
    const Mat TeV = t_e * lu_th.solve(V);
    const Mat ReV = r_e * lu_rh.solve(V);

    Mat sys(2 * n2, 2 * n2);
    sys.topLeftCorner(n2, n2) = (phi - TeV) * ea.asDiagonal();
    sys.topRightCorner(n2, n2) = phi + TeV;
    sys.bottomLeftCorner(n2, n2) = phi - ReV;
    sys.bottomRightCorner(n2, n2) = (phi + ReV) * ea.asDiagonal();

    Mat rhs = Mat::Zero(2 * n2, n2);
    rhs.bottomRows(n2) = i_e - r_e * lu_rh.solve(i_h);

    Eigen::PartialPivLU<Mat> lu_sys(sys);
    condition = std::max(condition, lu_condition_proxy(lu_sys));
    const Mat C = lu_sys.solve(rhs);
    const Mat Cp = C.topRows(n2);
    const Mat Cm = C.bottomRows(n2);

    R = lu_rh.solve(V * (Cp - ea.asDiagonal() * Cm) - i_h);
    T = lu_th.solve(V * (ea.asDiagonal() * Cp - Cm));
  }
};

GratingOperators planar_limit_operators(const GratingSpec& spec, cd frequency,
                                        const BlochWavevector& k, int N) {
  const int P = 2 * N + 1;
  const cd w = frequency / speed_of_light;
  const cd eps_i = eval_material(spec.superstrate, frequency);
  const bool mirror_substrate = spec.substrate.is_perfect_mirror();
  const cd eps_t = mirror_substrate ? cd(1.0, 0.0) : eval_material(spec.substrate, frequency);

  GratingOperators out;
  out.reflection.frequency = frequency;
  out.reflection.order_count = P;
  out.reflection.matrix = MatrixXcd::Zero(2 * P, 2 * P);
  out.transmission = out.reflection;
  for (int m = 0; m < P; ++m) {
    const double alpha = k.kx + (m - N) * 2.0 * pi / spec.period;
    const Eigen::Matrix2cd blk = interface_block_eh(eps_i, eps_t, w, alpha, k.ky,
                                                    Incidence::downgoing, mirror_substrate);
    out.reflection.matrix(m, m) = blk(0, 0);
    out.reflection.matrix(m, m + P) = blk(0, 1);
    out.reflection.matrix(m + P, m) = blk(1, 0);
    out.reflection.matrix(m + P, m + P) = blk(1, 1);
    // one-interface transmission in the same amplitude pair: 1 + r
    out.transmission.matrix(m, m) = 1.0 + blk(0, 0);
    out.transmission.matrix(m, m + P) = blk(0, 1);
    out.transmission.matrix(m + P, m) = blk(1, 0);
    out.transmission.matrix(m + P, m + P) = 1.0 + blk(1, 1);
  }
  return out;
}

}  // namespace

ToeplitzPair fourier_toeplitz(const GratingSpec& spec, cd frequency, int N) {
  if (N < 0) fail(Status::domain_error, "fourier_toeplitz: N must be >= 0");
  spec.validate();
  const cd er = eval_material(spec.ridge, frequency);
  const cd eg = eval_material(spec.groove, frequency);
  const int P = 2 * N + 1;
  const double f = spec.filling;

  auto build = [&](cd v_ridge, cd v_groove) {
    std::vector<cd> c(2 * P - 1);  // c[m + (P-1)] = m-th coefficient, m in [-(P-1), P-1]
    c[P - 1] = f * v_ridge + (1.0 - f) * v_groove;
    for (int m = 1; m <= P - 1; ++m) {
      const cd v = (v_ridge - v_groove) * std::sin(pi * m * f) / (pi * m);
      c[P - 1 + m] = v;
      c[P - 1 - m] = v;
    }
    MatrixXcd t(P, P);
    for (int i = 0; i < P; ++i)
      for (int j = 0; j < P; ++j) t(i, j) = c[P - 1 + i - j];
    return t;
  };

  ToeplitzPair out;
  out.eps = build(er, eg);
  out.inv_eps = build(1.0 / er, 1.0 / eg);
  return out;
}

MaxwellBlocks build_maxwell_blocks(const GratingSpec& spec, cd frequency,
                                   const BlochWavevector& k, int N) {
  if (frequency == cd(0.0, 0.0))
    fail(Status::domain_error, "build_maxwell_blocks: frequency must be nonzero");
  const ToeplitzPair tp = fourier_toeplitz(spec, frequency, N);
  const int P = 2 * N + 1;
  const cd w = frequency / speed_of_light;

  VectorXd alpha(P);
  for (int m = 0; m < P; ++m) alpha(m) = k.kx + (m - N) * 2.0 * pi / spec.period;

  MaxwellBlocks out;
  Eigen::PartialPivLU<MatrixXcd> lu_eps(tp.eps);
  Eigen::PartialPivLU<MatrixXcd> lu_inv_eps(tp.inv_eps);
  out.condition = std::max(lu_condition_proxy(lu_eps), lu_condition_proxy(lu_inv_eps));
  const MatrixXcd eps_inv = lu_eps.solve(MatrixXcd::Identity(P, P));
  const MatrixXcd inv_rule = lu_inv_eps.solve(MatrixXcd::Identity(P, P));

  const cd I(0.0, 1.0);
  const double ky = k.ky;
  const MatrixXcd A = alpha.cast<cd>().asDiagonal();
  const MatrixXcd Id = MatrixXcd::Identity(P, P);

  out.M1.resize(2 * P, 2 * P);
  out.M1.topLeftCorner(P, P) = -(I * ky / w) * (A * eps_inv);
  out.M1.topRightCorner(P, P) = -(I * w) * Id + (I / w) * (A * eps_inv * A);
  out.M1.bottomLeftCorner(P, P) = (I * w) * Id - (I * ky * ky / w) * eps_inv;
  out.M1.bottomRightCorner(P, P) = (I * ky / w) * (eps_inv * A);

  out.M2.resize(2 * P, 2 * P);
  out.M2.topLeftCorner(P, P) = (I * ky / w) * A;
  out.M2.topRightCorner(P, P) = (I * w) * tp.eps - (I / w) * (A * A);
  out.M2.bottomLeftCorner(P, P) = -(I * w) * inv_rule + (I * ky * ky / w) * Id;
  out.M2.bottomRightCorner(P, P) = -(I * ky / w) * A;
  return out;
}

HelmholtzModes helmholtz_eigen(const MatrixXcd& M1, const MatrixXcd& M2) {
  const auto n2 = M1.rows();
  HelmholtzModes out;

  const double imag_norm = M1.imag().cwiseAbs().maxCoeff() + M2.imag().cwiseAbs().maxCoeff();
  if (imag_norm == 0.0) {
    // Imaginary-frequency case: M^(e) real; try the real solver first.
    const MatrixXd Me = (M1.real() * M2.real()).eval();
    Eigen::EigenSolver<MatrixXd> es(Me);
    if (es.info() == Eigen::Success) {
      const VectorXcd lam = es.eigenvalues();
      const double scale = lam.cwiseAbs().maxCoeff();
      bool real_ok = true;
      for (Eigen::Index i = 0; i < n2; ++i)
        if (std::abs(lam(i).imag()) > 1e-9 * scale || lam(i).real() < 1e-12 * scale)
          real_ok = false;
      if (real_ok) {
        out.phi = es.eigenvectors();
        out.lambda = lam;
        out.sqrt_lambda.resize(n2);
        for (Eigen::Index i = 0; i < n2; ++i)
          out.sqrt_lambda(i) = std::sqrt(lam(i).real());
        out.real_valued = true;
      }
    }
  }
  if (!out.real_valued) {
    Eigen::ComplexEigenSolver<MatrixXcd> es(M1 * M2);
    if (es.info() != Eigen::Success)
      fail(Status::near_defective, "helmholtz_eigen: eigendecomposition failed");
    out.phi = es.eigenvectors();
    out.lambda = es.eigenvalues();
    out.sqrt_lambda.resize(n2);
    for (Eigen::Index i = 0; i < n2; ++i) {
      cd s = std::sqrt(out.lambda(i));
      if (s.real() < 0.0) s = -s;
      if (std::abs(s.real()) < 1e-14 * std::abs(s) && s.imag() < 0.0) s = -s;
      out.sqrt_lambda(i) = s;
    }
  }

  Eigen::PartialPivLU<MatrixXcd> lu(out.phi);
  out.condition = lu_condition_proxy(lu);
  if (!std::isfinite(out.condition) || out.condition > 1e14)
    fail(Status::near_defective,
         "helmholtz_eigen: eigenvector matrix near defective; change N or nudge the frequency");
  return out;
}

BoundaryMatrices boundary_matrices(const GratingSpec& spec, cd frequency,
                                   const BlochWavevector& k, int N) {
  const int P = 2 * N + 1;
  const cd w = frequency / speed_of_light;
  const cd eps_i = eval_material(spec.superstrate, frequency);
  const cd eps_t = eval_material(spec.substrate, frequency);
  const cd Di = eps_i * w * w - k.ky * k.ky;
  const cd Dt = eps_t * w * w - k.ky * k.ky;
  const double pole_scale = std::abs(eps_i * w * w) + k.ky * k.ky;
  if (std::abs(Di) < 1e-12 * pole_scale || std::abs(Dt) < 1e-12 * pole_scale)
    fail(Status::grazing_pole, "boundary_matrices: eps w^2 - ky^2 vanishes; perturb ky");

  BoundaryMatrices out;
  out.gamma_i.resize(P);
  out.gamma_t.resize(P);
  VectorXcd alpha(P);
  for (int m = 0; m < P; ++m) {
    const double a = k.kx + (m - N) * 2.0 * pi / spec.period;
    alpha(m) = a;
    out.gamma_i(m) = gamma_branch(eps_i, w, a, k.ky);
    out.gamma_t(m) = gamma_branch(eps_t, w, a, k.ky);
  }

  const MatrixXcd Z = MatrixXcd::Zero(P, P);
  const MatrixXcd Id = MatrixXcd::Identity(P, P);
  const MatrixXcd A = alpha.asDiagonal();
  const MatrixXcd Gi = out.gamma_i.asDiagonal();
  const MatrixXcd Gt = out.gamma_t.asDiagonal();

  auto two_by_two = [P](const MatrixXcd& a11, const MatrixXcd& a12, const MatrixXcd& a21,
                        const MatrixXcd& a22) {
    MatrixXcd m(2 * P, 2 * P);
    m.topLeftCorner(P, P) = a11;
    m.topRightCorner(P, P) = a12;
    m.bottomLeftCorner(P, P) = a21;
    m.bottomRightCorner(P, P) = a22;
    return m;
  };

  out.t_e = two_by_two(-(k.ky / Dt) * A, (w / Dt) * Gt, Id, Z);
  out.t_h = two_by_two(-(w * eps_t / Dt) * Gt, -(k.ky / Dt) * A, Z, Id);
  out.r_e = two_by_two(-(k.ky / Di) * A, -(w / Di) * Gi, Id, Z);
  out.r_h = two_by_two((w * eps_i / Di) * Gi, -(k.ky / Di) * A, Z, Id);
  out.i_e = two_by_two(-(k.ky / Di) * A, (w / Di) * Gi, Id, Z);
  out.i_h = two_by_two(-(w * eps_i / Di) * Gi, -(k.ky / Di) * A, Z, Id);
  return out;
}

GratingOperators grating_scatter(const GratingSpec& spec, cd frequency,
                                 const BlochWavevector& k, int N) {
  spec.validate();
  if (N < 0) fail(Status::domain_error, "grating_scatter: N must be >= 0");
  if (spec.superstrate.is_perfect_mirror())
    fail(Status::unsupported, "superstrate cannot be a perfect mirror");
  if (spec.depth == 0.0) return planar_limit_operators(spec, frequency, k, N);
  if (spec.ridge.is_perfect_mirror() || spec.groove.is_perfect_mirror() ||
      spec.substrate.is_perfect_mirror())
    fail(Status::unsupported, "perfect mirror inside a finite-depth grating is unsupported");

  const int P = 2 * N + 1;
  MaxwellBlocks mb = build_maxwell_blocks(spec, frequency, k, N);
  HelmholtzModes modes = helmholtz_eigen(mb.M1, mb.M2);
  BoundaryMatrices bm = boundary_matrices(spec, frequency, k, N);

  GratingOperators out;
  out.condition = std::max(mb.condition, modes.condition);
  out.reflection.frequency = frequency;
  out.reflection.order_count = P;
  out.transmission.frequency = frequency;
  out.transmission.order_count = P;

  const double boundary_imag =
      bm.t_e.imag().cwiseAbs().maxCoeff() + bm.t_h.imag().cwiseAbs().maxCoeff() +
      bm.r_e.imag().cwiseAbs().maxCoeff() + bm.r_h.imag().cwiseAbs().maxCoeff() +
      bm.i_e.imag().cwiseAbs().maxCoeff() + bm.i_h.imag().cwiseAbs().maxCoeff();

  if (modes.real_valued && boundary_imag == 0.0) {
    VectorXd sq = modes.sqrt_lambda.real();
    MatrixXd R, T;
    ScatterSolve<double>::run(mb.M1.real(), modes.phi.real(), sq, bm.t_e.real(),
                              bm.t_h.real(), bm.r_e.real(), bm.r_h.real(), bm.i_e.real(),
                              bm.i_h.real(), spec.depth, R, T, out.condition);
    out.reflection.matrix = R.cast<cd>();
    out.transmission.matrix = T.cast<cd>();
    out.real_path = true;
  } else {
    MatrixXcd R, T;
    ScatterSolve<cd>::run(mb.M1, modes.phi, modes.sqrt_lambda, bm.t_e, bm.t_h, bm.r_e,
                          bm.r_h, bm.i_e, bm.i_h, spec.depth, R, T, out.condition);
    out.reflection.matrix = std::move(R);
    out.transmission.matrix = std::move(T);
  }
  return out;
}

ScatterOperator grating_reflection(const GratingSpec& spec, cd frequency,
                                   const BlochWavevector& k, int N) {
  return grating_scatter(spec, frequency, k, N).reflection;
}

ScatterOperator grating_transmission(const GratingSpec& spec, cd frequency,
                                     const BlochWavevector& k, int N) {
  return grating_scatter(spec, frequency, k, N).transmission;
}

Efficiencies diffraction_efficiencies(const GratingSpec& spec, double omega,
                                      double theta_incidence, int N, Polarization pol) {
  if (omega <= 0.0) fail(Status::domain_error, "diffraction_efficiencies: omega must be > 0");
  auto lossless_real = [omega](const PermittivityModel& m) {
    const cd e = m.eval_real(omega);
    if (std::abs(e.imag()) > 1e-12 * std::abs(e))
      fail(Status::unsupported, "diffraction_efficiencies: lossy material (energy balance undefined)");
    return e.real();
  };
  const double eps_i = lossless_real(spec.superstrate);
  const double eps_t = lossless_real(spec.substrate);
  lossless_real(spec.ridge);
  lossless_real(spec.groove);

  const double w = omega / speed_of_light;
  BlochWavevector k;
  k.kx = std::sqrt(eps_i) * w * std::sin(theta_incidence);
  k.ky = 0.0;

  const int P = 2 * N + 1;
  const GratingOperators ops = grating_scatter(spec, cd(omega, 0.0), k, N);

  const int p = N;  // incident order 0
  const double gp = std::sqrt(std::max(eps_i * w * w - k.kx * k.kx, 0.0));
  if (gp <= 0.0) fail(Status::domain_error, "incident order is evanescent");

  Efficiencies out;
  out.orders.resize(P);
  out.reflected.assign(P, 0.0);
  out.transmitted.assign(P, 0.0);
  const int col = (pol == Polarization::e ? 0 : P) + p;
  // z-flux of a (E_y, H_y) order in medium eps: gamma |E_y|^2 + gamma/eps |H_y|^2;
  // the incident wave has unit E_y (pol e) or unit H_y (pol h).
  const double inc_flux = (pol == Polarization::e) ? gp : gp / eps_i;
  for (int m = 0; m < P; ++m) {
    out.orders[m] = m - N;
    const double alpha = k.kx + (m - N) * 2.0 * pi / spec.period;
    const double gi2 = eps_i * w * w - alpha * alpha;
    const double gt2 = eps_t * w * w - alpha * alpha;
    const cd re = ops.reflection.matrix(m, col);
    const cd rh = ops.reflection.matrix(m + P, col);
    const cd te = ops.transmission.matrix(m, col);
    const cd th = ops.transmission.matrix(m + P, col);
    if (gi2 > 0.0) {
      const double gi = std::sqrt(gi2);
      out.reflected[m] = (std::norm(re) + std::norm(rh) / eps_i) * gi / inc_flux;
    }
    if (gt2 > 0.0) {
      const double gt = std::sqrt(gt2);
      out.transmitted[m] = (std::norm(te) + std::norm(th) / eps_t) * gt / inc_flux;
    }
    out.total_reflected += out.reflected[m];
    out.total_transmitted += out.transmitted[m];
  }
  return out;
}

}  // namespace casg
