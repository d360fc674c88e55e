#pragma once

#include <cstddef>
#include <vector>

#include "casimir/fresnel.hpp"

namespace casimir {

/// Two mirrors enclosing an ordered stack of n >= 1 medium layers.
/// medium[0] is layer 1 (touching the left plate), medium[n-1] is layer n.
/// Layer indices in this module are 1-based to match that numbering.
struct SystemConfig {
  Plate plate_left = Plate::phase_reflector(1.0, -1.0);
  std::vector<Layer> medium;
  Plate plate_right = Plate::phase_reflector(1.0, -1.0);

  /// Throws ValidationError unless n >= 1 and all thicknesses are finite,
  /// >= 0. d1 > 0 and dn > 0 are additionally required by the spectral
  /// integrals and enforced there.
  void validate() const;

  std::size_t layer_count() const { return medium.size(); }

  /// Total gap d = sum of all layer thicknesses (m).
  double total_gap() const;
};

/// The system seen from behind: plates swapped, medium reversed.
SystemConfig mirrored(const SystemConfig& sys);

/// Integrand value at one spectral point for one polarization.
struct KernelValue {
  double value = 0.0;
  Polarization q = Polarization::p;
};

/// Generalized multiple-scattering denominator
///   N = 1 - (r_fwd R_L e1 + r_bwd R_R en) - a R_L R_R e1 en,
/// where r_fwd/r_bwd/a describe the stack between layers 1 and n,
/// e1 = e^{-2 kappa_1 d_1}, en = e^{-2 kappa_n d_n}, and R_L/R_R are the
/// plate reflections. Throws DegenerateError if N <= 1e-15.
double n_denominator(const SystemConfig& sys, const SpectralPoint& pt);

/// kappa_1 (r_fwd + a R_R en) R_L e1 / N. Pressure integrand on the left
/// plate; positive values push the plate toward +z (rightward).
double force_left_integrand(const SystemConfig& sys, const SpectralPoint& pt);

/// -kappa_n (r_bwd + a R_L e1) R_R en / N. Pressure integrand on the right
/// plate under the same sign convention.
double force_right_integrand(const SystemConfig& sys, const SpectralPoint& pt);

/// Net pressure integrand on the interior stack (layers between 1 and n):
/// (kappa_n r_bwd R_R en - kappa_1 r_fwd R_L e1)/N
///   + (kappa_n - kappa_1) (a/N) R_L R_R e1 en.
/// Identically -force_left - force_right.
double force_stack_integrand(const SystemConfig& sys, const SpectralPoint& pt);

/// zz stress integrand in layer j (1-based):
///   kappa_j v / (1 - v),  v = r_minus r_plus e^{-2 kappa_j d_j},
/// with r_minus/r_plus the plate-dressed reflections seen from inside
/// layer j. Reproduces force_left_integrand at j = 1 and
/// -force_right_integrand at j = n.
double stress_zz_integrand(const SystemConfig& sys, std::size_t j,
                           const SpectralPoint& pt);

/// Energy integrand summed over polarizations: sum_q ln N(q).
double energy_integrand(const SystemConfig& sys, double xi, double k);

/// ln N for a single polarization.
KernelValue log_denominator(const SystemConfig& sys, const SpectralPoint& pt);

/// Effective denominator with respect to intermediate layer l (1 < l < n):
///   N_l = (1 - r_{1/l} R_L e1)(1 - r_{n/l} R_R en)
///         - e^{-2 kappa_l d_l} (a_{1/l} R_L e1 + r_{l/1})
///                              (a_{n/l} R_R en + r_{l/n}).
/// Satisfies N_l = N * D_l with D_l = 1 - r_{l/1} r_{l/n} e^{-2 kappa_l d_l}.
double effective_denominator(const SystemConfig& sys, std::size_t l,
                             const SpectralPoint& pt);

/// ln N_l for one polarization, safe for quadrature: where the closed form
/// of effective_denominator loses all significant digits (deep-infrared
/// corner with near-perfect mirrors) it is replaced by the algebraically
/// identical factorization N * D_l.
KernelValue log_effective_denominator(const SystemConfig& sys, std::size_t l,
                                      const SpectralPoint& pt);

/// All integrands needed by the spectral integrals, for one polarization,
/// sharing a single stack evaluation.
struct IntegrandComponents {
  double log_n = 0.0;
  double force_left = 0.0;
  double force_right = 0.0;
  double force_stack = 0.0;
};

IntegrandComponents integrand_components(const SystemConfig& sys,
                                         const SpectralPoint& pt);

/// Direct two-medium closed form of the same components (n = 2 only):
/// N2 = 1 - r12 (R_L e1 - R_R e2) - R_L R_R e1 e2 with the single-interface
/// r12. Exists as an independent algebraic route for cross-checking the
/// recursive path; throws ValidationError unless the medium has exactly two
/// layers.
IntegrandComponents integrand_components_two_medium(const SystemConfig& sys,
                                                    const SpectralPoint& pt);

}  // namespace casimir
