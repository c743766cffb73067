#pragma once

namespace casg {

// 2018 CODATA, SI
inline constexpr double speed_of_light = 299792458.0;        // m/s
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double k_boltzmann = 1.380649e-23;          // J/K
inline constexpr double pi = 3.14159265358979323846;

// First Matsubara frequency spacing 2*pi*kB*T/hbar in rad/s per kelvin.
inline constexpr double matsubara_step_per_kelvin =
    2.0 * pi * k_boltzmann / hbar;

}  // namespace casg
