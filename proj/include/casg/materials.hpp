#pragma once

#include <complex>
#include <string>
#include <vector>

#include "casg/error.hpp"

namespace casg {

enum class MaterialKind {
  vacuum,
  constant,
  drude,
  two_oscillator,
  tabulated,
  perfect_mirror,
};

// Dielectric response evaluable on the imaginary axis (Casimir path) and on
// the real axis (validation path). Immutable after construction; evaluation
// is pure and safe for concurrent use.
//
// Imaginary-axis forms:
//   drude:           1 + wp^2 / (xi (xi + gamma))
//   two_oscillator:  eps_inf + (eps_static - eps_inf) w0^2/(w0^2 + xi^2)
//                    + wp^2/(xi (xi + gamma))
//   tabulated:       1 + (2/pi) int w Im eps(w)/(w^2 + xi^2) dw over the
//                    table, plus the analytic Drude part below the table's
//                    lowest frequency.
// perfect_mirror has no permittivity; reflection code branches on the flag
// (r_TE = -1, r_TM = +1 exactly).
class PermittivityModel {
 public:
  static PermittivityModel vacuum();
  static PermittivityModel constant(double eps);
  static PermittivityModel drude(double plasma_frequency, double relaxation_rate);
  static PermittivityModel two_oscillator(double eps_static, double eps_infinity,
                                          double resonance_frequency,
                                          double plasma_frequency,
                                          double relaxation_rate);
  // table rows: (frequency rad/s, Im eps), ascending frequency.
  // (plasma_frequency, relaxation_rate) give the Drude extrapolation below
  // the table's lowest frequency.
  static PermittivityModel tabulated(std::vector<std::pair<double, double>> table,
                                     double plasma_frequency, double relaxation_rate);
  static PermittivityModel tabulated_csv(const std::string& path,
                                         double plasma_frequency,
                                         double relaxation_rate);
  static PermittivityModel perfect_mirror();

  // Shipped defaults. Gold: wp = 1.37e16 rad/s (9.0 eV), gamma = 4.05e13
  // rad/s (26.7 meV). Doped silicon: intrinsic single-oscillator fit
  // (eps_static 11.87, eps_inf 1.035, w0 6.6e15) plus free carriers at
  // 2e18 cm^-3: wp = 1.10e14 rad/s (optical hole mass ~0.5 m_e),
  // gamma = 4.3e13 rad/s (mobility ~80 cm^2/Vs). Both are calibration
  // inputs and fully configurable through the generic factories.
  static PermittivityModel gold_drude();
  static PermittivityModel doped_silicon();
  static PermittivityModel intrinsic_silicon();

  // eps(i xi), real and >= 1 for xi > 0. xi < 0 is a domain error; xi = 0
  // with a Drude term throws Status::zero_frequency_singular (the engine
  // treats n = 0 separately).
  double eval_imag(double xi) const;

  // eps(omega) on the real axis, Im eps >= 0 in the e^{-i omega t}
  // convention. omega <= 0 is a domain error.
  std::complex<double> eval_real(double omega) const;

  MaterialKind kind() const { return kind_; }
  bool is_perfect_mirror() const { return kind_ == MaterialKind::perfect_mirror; }
  bool is_vacuum() const { return kind_ == MaterialKind::vacuum; }
  // True when eps(i xi) diverges as xi -> 0 (free-carrier term present).
  bool diverges_at_zero() const;
  // Finite xi -> 0 limit; throws for diverging models.
  double eps_zero() const;

  double plasma_frequency() const { return plasma_frequency_; }
  double relaxation_rate() const { return relaxation_rate_; }

 private:
  PermittivityModel() = default;

  MaterialKind kind_ = MaterialKind::vacuum;
  double eps_constant_ = 1.0;
  double plasma_frequency_ = 0.0;
  double relaxation_rate_ = 0.0;
  double eps_static_ = 1.0;
  double eps_infinity_ = 1.0;
  double resonance_frequency_ = 0.0;
  std::vector<std::pair<double, double>> table_;
};

}  // namespace casg
