#pragma once

#include <string>
#include <vector>

#include "casg/engine.hpp"

namespace casg {

enum class RatioKind { theta_f, eta_f };

// One computed ratio curve over separation distance.
struct RatioCurve {
  std::vector<double> abscissa;  // L, m
  std::vector<double> values;
  RatioKind kind = RatioKind::theta_f;
  double T = 0.0;  // K (eta_f only; theta_f compares 300 K to 0 K)
};

// Proximity force approximation: the lamellar profile averages the
// plane-plane pressure over the period, closed form
// f F_pp(L) + (1 - f) F_pp(L + a); the plate faces the ridge material
// across L and the substrate across L + a.
double pfa_pressure(double L, double T, const PlanarStack& stack, const GratingSpec& grating,
                    const LifshitzOptions& opt = {});

// theta_F(L, a) = F(T = 300 K) / F(T = 0); numerator and denominator share
// one QuadratureSpec by construction.
double theta_f(double L, const PlanarStack& stack, const GratingSpec& grating,
               const QuadratureSpec& quad, double T_hot = 300.0);
// Ratio from precomputed force points; refuses mismatched quadrature specs.
double theta_f_from_points(const ForcePoint& hot, const ForcePoint& cold);

// eta_F(L; T) = F_exact / F_PFA at temperature T (T = 0 uses the frequency
// integral on both sides).
double eta_f(double L, double T, const PlanarStack& stack, const GratingSpec& grating,
             const QuadratureSpec& quad);

struct EtaMax {
  double L_max = 0.0;
  double bracket_width = 0.0;
  bool interior = false;  // false: maximum sits on the grid boundary
};
// Locate the maximum of eta_F(L) at fixed trench depth: grid scan over
// [L_lo, L_hi] then golden-section refinement to abs_tol.
EtaMax eta_max_locator(double T, const PlanarStack& stack, const GratingSpec& grating,
                       const QuadratureSpec& quad, double L_lo, double L_hi, int grid_points,
                       double abs_tol);

struct SphereGradient {
  double gradient = 0.0;  // d_L F_sphere = 2 pi R F_plate-grating, N/m
  bool pfa_strained = false;  // L/R > 0.05
};
SphereGradient sphere_gradient(double L, double radius, double T, const PlanarStack& stack,
                               const GratingSpec& grating, const QuadratureSpec& quad);

// Overlay of a computed ratio curve against experimental CSV rows
// (header L_m,value,sigma; '#' comments). The curve is interpolated at the
// data abscissae with a monotone cubic in log L.
struct OverlayRow {
  double L = 0.0;
  double value = 0.0;
  double sigma = 0.0;
  double model = 0.0;
  double residual = 0.0;    // value - model
  double normalized = 0.0;  // residual / sigma
  bool skipped = false;     // abscissa outside the computed range
};
struct OverlayResult {
  std::vector<OverlayRow> rows;
  double chi2 = 0.0;
  double chi2_reduced = 0.0;
  int n_used = 0;
};
OverlayResult overlay_experiment(const std::string& csv_path, const RatioCurve& computed);

// Monotone cubic (Fritsch-Carlson) interpolation helper used by the overlay.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, m_;
};

}  // namespace casg
