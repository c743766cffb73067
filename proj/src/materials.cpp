#include "casg/materials.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "casg/constants.hpp"

namespace casg {

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::invalid_argument: return "invalid_argument";
    case Status::domain_error: return "domain_error";
    case Status::zero_frequency_singular: return "zero_frequency_singular";
    case Status::grazing_pole: return "grazing_pole";
    case Status::near_defective: return "near_defective";
    case Status::conditioning: return "conditioning";
    case Status::convergence_failure: return "convergence_failure";
    case Status::io_error: return "io_error";
    case Status::unsupported: return "unsupported";
  }
  return "unknown";
}

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) fail(Status::invalid_argument, std::string(name) + " must be finite");
}

}  // namespace

PermittivityModel PermittivityModel::vacuum() {
  PermittivityModel m;
  m.kind_ = MaterialKind::vacuum;
  return m;
}

PermittivityModel PermittivityModel::constant(double eps) {
  require_finite(eps, "eps");
  if (eps < 1.0) fail(Status::invalid_argument, "constant eps must be >= 1");
  PermittivityModel m;
  m.kind_ = MaterialKind::constant;
  m.eps_constant_ = eps;
  return m;
}

PermittivityModel PermittivityModel::drude(double wp, double gamma) {
  require_finite(wp, "plasma_frequency");
  require_finite(gamma, "relaxation_rate");
  if (wp <= 0.0 || gamma <= 0.0)
    fail(Status::invalid_argument, "drude parameters must be positive");
  PermittivityModel m;
  m.kind_ = MaterialKind::drude;
  m.plasma_frequency_ = wp;
  m.relaxation_rate_ = gamma;
  return m;
}

PermittivityModel PermittivityModel::two_oscillator(double eps_static, double eps_inf,
                                                    double w0, double wp, double gamma) {
  require_finite(eps_static, "eps_static");
  require_finite(eps_inf, "eps_infinity");
  require_finite(w0, "resonance_frequency");
  if (eps_inf < 1.0 || eps_static < eps_inf)
    fail(Status::invalid_argument, "need eps_static >= eps_infinity >= 1");
  if (w0 <= 0.0) fail(Status::invalid_argument, "resonance_frequency must be positive");
  if (wp < 0.0 || (wp > 0.0 && gamma <= 0.0))
    fail(Status::invalid_argument, "bad free-carrier parameters");
  PermittivityModel m;
  m.kind_ = MaterialKind::two_oscillator;
  m.eps_static_ = eps_static;
  m.eps_infinity_ = eps_inf;
  m.resonance_frequency_ = w0;
  m.plasma_frequency_ = wp;
  m.relaxation_rate_ = gamma;
  return m;
}

PermittivityModel PermittivityModel::tabulated(std::vector<std::pair<double, double>> table,
                                               double wp, double gamma) {
  if (table.size() < 2) fail(Status::invalid_argument, "table needs at least 2 rows");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!std::isfinite(table[i].first) || !std::isfinite(table[i].second))
      fail(Status::invalid_argument, "table entries must be finite");
    if (table[i].first <= 0.0) fail(Status::invalid_argument, "table frequencies must be > 0");
    if (table[i].second < 0.0) fail(Status::invalid_argument, "Im eps must be >= 0");
    if (i > 0 && table[i].first <= table[i - 1].first)
      fail(Status::invalid_argument, "table frequencies must be strictly ascending");
  }
  if (wp < 0.0 || (wp > 0.0 && gamma <= 0.0))
    fail(Status::invalid_argument, "bad Drude extrapolation parameters");
  PermittivityModel m;
  m.kind_ = MaterialKind::tabulated;
  m.table_ = std::move(table);
  m.plasma_frequency_ = wp;
  m.relaxation_rate_ = gamma;
  return m;
}

PermittivityModel PermittivityModel::tabulated_csv(const std::string& path,
                                                   double wp, double gamma) {
  std::ifstream in(path);
  if (!in) fail(Status::io_error, "cannot open " + path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (auto& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    double w, im;
    if (!(ss >> w)) continue;  // blank / comment-only line
    if (!(ss >> im))
      fail(Status::io_error, path + ":" + std::to_string(lineno) + ": expected two columns");
    rows.emplace_back(w, im);
  }
  if (rows.empty()) fail(Status::io_error, path + ": no data rows");
  return tabulated(std::move(rows), wp, gamma);
}

PermittivityModel PermittivityModel::perfect_mirror() {
  PermittivityModel m;
  m.kind_ = MaterialKind::perfect_mirror;
  return m;
}

PermittivityModel PermittivityModel::gold_drude() { return drude(1.37e16, 4.05e13); }

PermittivityModel PermittivityModel::doped_silicon() {
  return two_oscillator(11.87, 1.035, 6.6e15, 1.10e14, 4.3e13);
}

PermittivityModel PermittivityModel::intrinsic_silicon() {
  return two_oscillator(11.87, 1.035, 6.6e15, 0.0, 0.0);
}

bool PermittivityModel::diverges_at_zero() const {
  switch (kind_) {
    case MaterialKind::drude:
      return true;
    case MaterialKind::two_oscillator:
    case MaterialKind::tabulated:
      return plasma_frequency_ > 0.0;
    default:
      return false;
  }
}

double PermittivityModel::eps_zero() const {
  if (diverges_at_zero())
    fail(Status::zero_frequency_singular, "eps(i xi) diverges as xi -> 0");
  switch (kind_) {
    case MaterialKind::vacuum: return 1.0;
    case MaterialKind::constant: return eps_constant_;
    case MaterialKind::two_oscillator: return eps_static_;
    case MaterialKind::tabulated: return eval_imag(table_.front().first * 1e-6);
    case MaterialKind::perfect_mirror:
      fail(Status::unsupported, "perfect mirror has no permittivity");
    default: return 1.0;
  }
}

double PermittivityModel::eval_imag(double xi) const {
  if (xi < 0.0) fail(Status::domain_error, "eval_imag: xi must be >= 0");
  switch (kind_) {
    case MaterialKind::vacuum:
      return 1.0;
    case MaterialKind::constant:
      return eps_constant_;
    case MaterialKind::drude: {
      if (xi == 0.0)
        fail(Status::zero_frequency_singular, "Drude eps(i xi) singular at xi = 0");
      return 1.0 + plasma_frequency_ * plasma_frequency_ / (xi * (xi + relaxation_rate_));
    }
    case MaterialKind::two_oscillator: {
      if (xi == 0.0 && plasma_frequency_ > 0.0)
        fail(Status::zero_frequency_singular, "free-carrier term singular at xi = 0");
      const double w02 = resonance_frequency_ * resonance_frequency_;
      double eps = eps_infinity_ + (eps_static_ - eps_infinity_) * w02 / (w02 + xi * xi);
      if (plasma_frequency_ > 0.0)
        eps += plasma_frequency_ * plasma_frequency_ / (xi * (xi + relaxation_rate_));
      return eps;
    }
    case MaterialKind::tabulated: {
      if (xi == 0.0 && plasma_frequency_ > 0.0)
        fail(Status::zero_frequency_singular, "Drude extrapolation singular at xi = 0");
      // Kramers-Kronig on the table (trapezoid over the tabulated grid).
      const double xi2 = xi * xi;
      double acc = 0.0;
      auto g = [&](std::size_t i) {
        const double w = table_[i].first;
        return w * table_[i].second / (w * w + xi2);
      };
      for (std::size_t i = 0; i + 1 < table_.size(); ++i)
        acc += 0.5 * (g(i) + g(i + 1)) * (table_[i + 1].first - table_[i].first);
      // Analytic Drude contribution below the table's lowest frequency:
      // int_0^w1 wp^2 gamma / ((w^2+gamma^2)(w^2+xi^2)) dw
      if (plasma_frequency_ > 0.0) {
        const double w1 = table_.front().first;
        const double g0 = relaxation_rate_;
        const double wp2 = plasma_frequency_ * plasma_frequency_;
        double ival;
        if (std::abs(xi - g0) > 1e-6 * g0) {
          ival = (std::atan(w1 / g0) / g0 - std::atan(w1 / xi) / xi) / (xi2 - g0 * g0);
        } else {
          ival = w1 / (2.0 * g0 * g0 * (w1 * w1 + g0 * g0)) +
                 std::atan(w1 / g0) / (2.0 * g0 * g0 * g0);
        }
        acc += wp2 * g0 * ival;
      }
      return 1.0 + 2.0 / pi * acc;
    }
    case MaterialKind::perfect_mirror:
      fail(Status::unsupported, "perfect mirror has no permittivity");
  }
  return 1.0;
}

std::complex<double> PermittivityModel::eval_real(double omega) const {
  if (omega <= 0.0) fail(Status::domain_error, "eval_real: omega must be > 0");
  using cd = std::complex<double>;
  switch (kind_) {
    case MaterialKind::vacuum:
      return {1.0, 0.0};
    case MaterialKind::constant:
      return {eps_constant_, 0.0};
    case MaterialKind::drude: {
      const cd den = omega * cd(omega, relaxation_rate_);
      return 1.0 - plasma_frequency_ * plasma_frequency_ / den;
    }
    case MaterialKind::two_oscillator: {
      const double w02 = resonance_frequency_ * resonance_frequency_;
      cd eps = eps_infinity_ +
               (eps_static_ - eps_infinity_) * w02 / (w02 - omega * omega);
      if (plasma_frequency_ > 0.0)
        eps -= plasma_frequency_ * plasma_frequency_ / (omega * cd(omega, relaxation_rate_));
      return eps;
    }
    case MaterialKind::tabulated: {
      // Im eps interpolated from the table; Re eps via Kramers-Kronig is out
      // of scope for the validation path.
      const auto& t = table_;
      if (omega <= t.front().first || omega >= t.back().first)
        fail(Status::domain_error, "eval_real: omega outside table range");
      std::size_t lo = 0, hi = t.size() - 1;
      while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        (t[mid].first <= omega ? lo : hi) = mid;
      }
      const double u = (omega - t[lo].first) / (t[hi].first - t[lo].first);
      return {1.0, (1.0 - u) * t[lo].second + u * t[hi].second};
    }
    case MaterialKind::perfect_mirror:
      fail(Status::unsupported, "perfect mirror has no permittivity");
  }
  return {1.0, 0.0};
}

}  // namespace casg
