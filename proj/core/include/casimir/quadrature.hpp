#pragma once

#include <cstdint>
#include <functional>

#include "casimir/kernel.hpp"

namespace casimir {

/// Controls for the spectral double integrals.
struct QuadratureSpec {
  /// Target relative error; convergence is declared when successive
  /// refinement levels differ by less than this times the result scale.
  double rel_tol = 1e-8;
  /// Convergence floor for components that are tiny relative to the dominant
  /// result scale (fraction of that scale).
  double abs_floor = 1e-20;
  /// Refinement budget; levels double the node density in each direction.
  int max_levels = 12;
  /// Characteristic frequency of the variable mapping (rad/s). 0 selects
  /// c / total_gap for system integrals and 1 for bare spectrum integrals.
  double xi_scale = 0.0;

  /// Throws ValidationError unless rel_tol is in (0, 1e-2], abs_floor >= 0,
  /// 4 <= max_levels <= 24, xi_scale >= 0.
  void validate() const;
};

/// Scalar integral with an absolute error estimate and the number of
/// (xi, k) node evaluations spent.
struct IntegralResult {
  double value = 0.0;
  double est_error = 0.0;
  std::int64_t evaluations = 0;
};

/// Per-polarization share of the spectral results.
struct PolarizationParts {
  double energy = 0.0;       ///< J/m^2
  double force_left = 0.0;   ///< N/m^2
  double force_right = 0.0;  ///< N/m^2
  double force_stack = 0.0;  ///< N/m^2
};

/// Energy per area and the three forces per area, with their polarization
/// breakdown. Totals are the exact sums of the two parts; force_stack equals
/// -(force_left + force_right) up to round-off by the pointwise identity of
/// the integrands.
struct CasimirResult {
  double energy = 0.0;
  double force_left = 0.0;
  double force_right = 0.0;
  double force_stack = 0.0;
  PolarizationParts p;
  PolarizationParts s;
  double est_error = 0.0;  ///< relative, max over components
  std::int64_t evaluations = 0;

  const PolarizationParts& part(Polarization q) const {
    return q == Polarization::p ? p : s;
  }
};

/// Evaluate integral dxi integral dk k f(xi, k) over (0, inf)^2.
///
/// Both semi-infinite directions are mapped through exponentially spaced
/// node families refined by level doubling; no node is ever placed at
/// xi = 0 or k = 0. est_error is absolute and satisfies
/// est_error <= rel_tol * |value| on return; NonConvergence is thrown
/// otherwise.
IntegralResult integrate_spectrum(
    const std::function<double(double xi, double k)>& f,
    const QuadratureSpec& spec = {});

/// Which algebraic route evaluates the point kernels.
enum class EvalRoute {
  recursive,   ///< general stack recursion (any n)
  two_medium,  ///< direct two-medium closed form (n = 2 only)
};

/// Casimir energy per unit area (J/m^2), negative for mutually attracting
/// configurations. Requires d1 > 0 and dn > 0.
double casimir_energy(const SystemConfig& sys, const QuadratureSpec& spec = {},
                      EvalRoute route = EvalRoute::recursive);

/// Energy and all three forces in one pass over a shared node set, so the
/// force sum rule holds to round-off rather than to quadrature tolerance.
CasimirResult casimir_forces(const SystemConfig& sys,
                             const QuadratureSpec& spec = {},
                             EvalRoute route = EvalRoute::recursive);

/// Effective energy with respect to intermediate layer l (1 < l < n):
/// the integral of sum_q ln N_l. Differs from casimir_energy by terms
/// independent of d1 and dn, so its gap derivatives equal the forces.
double effective_energy(const SystemConfig& sys, std::size_t l,
                        const QuadratureSpec& spec = {});

}  // namespace casimir
