#include "casg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace casg {

double pfa_pressure(double L, double T, const PlanarStack& stack, const GratingSpec& grating,
                    const LifshitzOptions& opt) {
  grating.validate();
  const double f = grating.filling;
  double p = 0.0;
  if (f > 0.0)
    p += f * lifshitz_pressure(L, T, stack.plate, grating.ridge, stack.gap, opt);
  if (f < 1.0)
    p += (1.0 - f) *
         lifshitz_pressure(L + grating.depth, T, stack.plate, grating.substrate, stack.gap, opt);
  return p;
}

double theta_f(double L, const PlanarStack& stack, const GratingSpec& grating,
               const QuadratureSpec& quad, double T_hot) {
  const ForcePoint hot = force_pressure(L, T_hot, stack, grating, quad);
  const ForcePoint cold = force_pressure_T0(L, stack, grating, quad);
  return theta_f_from_points(hot, cold);
}

double theta_f_from_points(const ForcePoint& hot, const ForcePoint& cold) {
  if (hot.diagnostics.quad_fingerprint != cold.diagnostics.quad_fingerprint)
    fail(Status::invalid_argument,
         "theta_f: numerator and denominator use different quadrature specs");
  if (hot.L != cold.L) fail(Status::invalid_argument, "theta_f: mismatched separations");
  if (cold.pressure == 0.0) fail(Status::domain_error, "theta_f: zero T = 0 pressure");
  return hot.pressure / cold.pressure;
}

double eta_f(double L, double T, const PlanarStack& stack, const GratingSpec& grating,
             const QuadratureSpec& quad) {
  const ForcePoint num = (T == 0.0) ? force_pressure_T0(L, stack, grating, quad)
                                    : force_pressure(L, T, stack, grating, quad);
  const double den = pfa_pressure(L, T, stack, grating);
  if (den == 0.0) fail(Status::domain_error, "eta_f: zero PFA pressure");
  return num.pressure / den;
}

EtaMax eta_max_locator(double T, const PlanarStack& stack, const GratingSpec& grating,
                       const QuadratureSpec& quad, double L_lo, double L_hi, int grid_points,
                       double abs_tol) {
  if (!(L_lo > 0.0 && L_hi > L_lo)) fail(Status::invalid_argument, "eta_max: bad bracket");
  if (grid_points < 3) fail(Status::invalid_argument, "eta_max: need >= 3 grid points");
  auto eta = [&](double L) { return eta_f(L, T, stack, grating, quad); };

  std::vector<double> Ls(grid_points), vals(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    Ls[i] = L_lo + (L_hi - L_lo) * i / (grid_points - 1);
    vals[i] = eta(Ls[i]);
  }
  int imax = 0;
  for (int i = 1; i < grid_points; ++i)
    if (vals[i] > vals[imax]) imax = i;

  EtaMax out;
  if (imax == 0 || imax == grid_points - 1) {
    out.L_max = Ls[imax];
    out.bracket_width = Ls[1] - Ls[0];
    out.interior = false;
    return out;
  }

  // golden-section on the bracketing triple
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = Ls[imax - 1], b = Ls[imax + 1];
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = eta(x1), f2 = eta(x2);
  while (b - a > abs_tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = eta(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = eta(x1);
    }
  }
  out.L_max = 0.5 * (a + b);
  out.bracket_width = b - a;
  out.interior = true;
  return out;
}

SphereGradient sphere_gradient(double L, double radius, double T, const PlanarStack& stack,
                               const GratingSpec& grating, const QuadratureSpec& quad) {
  if (!(radius > 0.0)) fail(Status::invalid_argument, "sphere_gradient: radius must be > 0");
  const ForcePoint fp = (T == 0.0) ? force_pressure_T0(L, stack, grating, quad)
                                   : force_pressure(L, T, stack, grating, quad);
  SphereGradient out;
  out.gradient = 2.0 * pi * radius * fp.pressure;
  out.pfa_strained = (L / radius) > 0.05;
  return out;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) fail(Status::invalid_argument, "interpolation needs >= 2 points");
  for (std::size_t i = 1; i < n; ++i)
    if (x_[i] <= x_[i - 1]) fail(Status::invalid_argument, "abscissae must be ascending");
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  m_.resize(n);
  m_[0] = d[0];
  m_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i)
    m_[i] = (d[i - 1] * d[i] > 0.0) ? 0.5 * (d[i - 1] + d[i]) : 0.0;
  // Fritsch-Carlson limiter
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      m_[i] = m_[i + 1] = 0.0;
      continue;
    }
    const double a = m_[i] / d[i];
    const double b = m_[i + 1] / d[i];
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double t = 3.0 / std::sqrt(s);
      m_[i] = t * a * d[i];
      m_[i + 1] = t * b * d[i];
    }
  }
}

double MonotoneCubic::operator()(double x) const {
  if (x < x_.front() || x > x_.back())
    fail(Status::domain_error, "interpolation abscissa out of range");
  std::size_t lo = 0, hi = x_.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (x_[mid] <= x ? lo : hi) = mid;
  }
  const double h = x_[hi] - x_[lo];
  const double t = (x - x_[lo]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y_[lo] + (t3 - 2 * t2 + t) * h * m_[lo] +
         (-2 * t3 + 3 * t2) * y_[hi] + (t3 - t2) * h * m_[hi];
}

OverlayResult overlay_experiment(const std::string& csv_path, const RatioCurve& computed) {
  if (computed.abscissa.size() != computed.values.size())
    fail(Status::invalid_argument, "overlay: malformed curve");
  std::ifstream in(csv_path);
  if (!in) fail(Status::io_error, "cannot open " + csv_path);

  OverlayResult out;
  std::unique_ptr<MonotoneCubic> interp;
  if (computed.abscissa.size() >= 2) {
    std::vector<double> logL(computed.abscissa.size());
    for (std::size_t i = 0; i < logL.size(); ++i) {
      if (computed.abscissa[i] <= 0.0) fail(Status::invalid_argument, "overlay: L must be > 0");
      logL[i] = std::log(computed.abscissa[i]);
    }
    interp = std::make_unique<MonotoneCubic>(std::move(logL), computed.values);
  }

  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    if (!header_seen && line.find("L_m") != std::string::npos) {
      header_seen = true;
      continue;
    }
    for (auto& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    OverlayRow row;
    if (!(ss >> row.L >> row.value >> row.sigma))
      fail(Status::io_error, csv_path + ":" + std::to_string(lineno) +
                                 ": expected L_m,value,sigma");
    if (row.sigma <= 0.0)
      fail(Status::io_error, csv_path + ":" + std::to_string(lineno) + ": sigma must be > 0");
    const double lx = std::log(row.L);
    if (!interp || lx < interp->x_min() || lx > interp->x_max()) {
      row.skipped = true;
    } else {
      row.model = (*interp)(lx);
      row.residual = row.value - row.model;
      row.normalized = row.residual / row.sigma;
      out.chi2 += row.normalized * row.normalized;
      ++out.n_used;
    }
    out.rows.push_back(row);
  }
  out.chi2_reduced = out.n_used > 0 ? out.chi2 / out.n_used : 0.0;
  return out;
}

}  // namespace casg
