#pragma once

#include "casg/constants.hpp"
#include "casg/error.hpp"
#include "casg/materials.hpp"

namespace casg {

// 1D lamellar grating. Ridge of width f*d centered at x = 0 (Fourier
// coefficients real and symmetric), groove filling the rest of the period.
// Region I (superstrate, z > 0) is the gap medium; region III (substrate,
// z < -depth) is bulk.
struct GratingSpec {
  double period = 0.0;   // d, m
  double depth = 0.0;    // a, m
  double filling = 0.0;  // f = ridge width / period
  PermittivityModel ridge = PermittivityModel::vacuum();
  PermittivityModel groove = PermittivityModel::vacuum();
  PermittivityModel substrate = PermittivityModel::vacuum();
  PermittivityModel superstrate = PermittivityModel::vacuum();

  void validate() const {
    if (!(period > 0.0)) fail(Status::invalid_argument, "period must be > 0");
    if (depth < 0.0) fail(Status::invalid_argument, "depth must be >= 0");
    if (filling < 0.0 || filling > 1.0)
      fail(Status::invalid_argument, "filling factor must be in [0, 1]");
  }
};

struct BlochWavevector {
  double kx = 0.0;  // rad/m, restricted to the first Brillouin zone
  double ky = 0.0;  // rad/m

  void validate(double period) const {
    const double edge = pi / period * (1.0 + 1e-12);
    if (kx < -edge || kx > edge)
      fail(Status::domain_error, "kx outside the first Brillouin zone");
  }
};

// Plate above the gap: gap medium eps_i, plate medium eps_p.
struct PlanarStack {
  PermittivityModel gap = PermittivityModel::vacuum();
  PermittivityModel plate = PermittivityModel::vacuum();
};

}  // namespace casg
