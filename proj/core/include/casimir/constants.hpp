#pragma once

#include <numbers>

namespace casimir {

/// Speed of light in vacuum (m/s).
inline constexpr double speed_of_light = 299792458.0;

/// Reduced Planck constant (J s), CODATA 2018.
inline constexpr double hbar = 1.054571817e-34;

/// Prefactor of the force integrals: hbar / (2 pi^2).
/// Multiplies integrals over d(xi) dk k of the per-polarization force kernels,
/// giving pressures in N/m^2.
inline constexpr double force_prefactor =
    hbar / (2.0 * std::numbers::pi * std::numbers::pi);

/// Prefactor of the energy integral: hbar / (2 pi)^2.
/// Multiplies the integral of the summed log-denominator, giving J/m^2.
/// Exactly half of force_prefactor.
inline constexpr double energy_prefactor =
    hbar / (4.0 * std::numbers::pi * std::numbers::pi);

}  // namespace casimir
