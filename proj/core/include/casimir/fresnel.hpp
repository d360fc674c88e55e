#pragma once

#include <span>
#include <variant>
#include <vector>

#include "casimir/material.hpp"

namespace casimir {

/// Homogeneous layer of finite thickness d (m). d = 0 is legal and acts as a
/// no-op spacer.
struct Layer {
  Material material;
  double d = 0.0;
};

/// Reflection/transmission amplitudes of a single interface for one
/// polarization, seen from the first medium.
struct InterfaceCoefficients {
  double r = 0.0;
  double t = 1.0;
};

/// Fresnel coefficients of a layer stack for one polarization.
///
/// r_fwd/t_fwd are seen by a wave incident from the left bounding medium,
/// r_bwd/t_bwd from the right. Propagation through the bounding media
/// themselves is not included. The invariant a = t_fwd*t_bwd - r_fwd*r_bwd
/// is maintained by the factory functions and by compose(); it is carried
/// explicitly because the composed closed form preserves it even when the
/// transmission amplitudes underflow through opaque stacks.
struct StackCoefficients {
  double r_fwd = 0.0;
  double r_bwd = 0.0;
  double t_fwd = 1.0;
  double t_bwd = 1.0;
  double a = 1.0;

  /// Coefficients of an empty stack between identical media.
  static StackCoefficients identity() { return {}; }
};

/// Homogeneous spacer between two sub-stacks: its perpendicular wave vector
/// at the current spectral point and its thickness.
struct Spacer {
  double kappa = 0.0;  ///< 1/m
  double d = 0.0;      ///< m
};

/// e^{-arg} for arg >= 0, flushed to exactly 0 below 1e-300. An underflowing
/// propagation factor is an opaque layer.
double decaying_exponential(double arg);

/// Single-interface Fresnel coefficients from medium m1 into medium m2:
///   r12 = (kappa1 - g kappa2) / (kappa1 + g kappa2),
///   t12 = sqrt(g / gs) (1 + r12),
/// with g = eps1/eps2 for p and g = gs = mu1/mu2 for s polarization.
InterfaceCoefficients single_interface(const Material& m1, const Material& m2,
                                       const SpectralPoint& pt);

/// Both orientations of a single interface assembled into stack form
/// (r_bwd = -r_fwd and a = 1 up to round-off).
StackCoefficients interface_stack(const Material& m1, const Material& m2,
                                  const SpectralPoint& pt);

/// Concatenate two stacks separated by a homogeneous spacer layer.
///
/// With x = e^{-2 kappa d} and D = 1 - left.r_bwd right.r_fwd x:
///   r_fwd = (left.r_fwd + left.a right.r_fwd x) / D
///   r_bwd = (right.r_bwd + right.a left.r_bwd x) / D
///   t_fwd = left.t_fwd right.t_fwd e^{-kappa d} / D   (t_bwd alike)
///   a     = (left.a right.a x - left.r_fwd right.r_bwd) / D
/// Throws DegenerateError if |D| <= 1e-30; for passive media D > 0 and the
/// floor can only be hit by a configuration bug.
StackCoefficients compose(const StackCoefficients& left, const Spacer& spacer,
                          const StackCoefficients& right);

/// Coefficients of the full stack `layers` bounded by semi-infinite media
/// bound_left | layers... | bound_right, built by a left-to-right fold of
/// compose(). An empty list between identical media yields the identity.
StackCoefficients stack_coefficients(std::span<const Layer> layers,
                                     const Material& bound_left,
                                     const Material& bound_right,
                                     const SpectralPoint& pt);

/// Mirror description: either an idealized reflector with constant
/// per-polarization amplitudes, or a coated half-space whose reflection is
/// computed from its layer structure.
class Plate {
 public:
  /// Constant reflection amplitudes rp, rs in [-1, 1], independent of
  /// (xi, k). phase_reflector(1, -1) is the perfect mirror realized as the
  /// infinite-permittivity limit; phase_reflector(0, 0) removes the plate.
  static Plate phase_reflector(double rp, double rs);

  /// Half-space substrate behind a (possibly empty) coating stack.
  /// coatings[0] touches the adjacent gap medium; the substrate terminates
  /// the stack without further reflection.
  static Plate coated_half_space(std::vector<Layer> coatings,
                                 Material substrate);

  /// Reflection amplitude seen from the adjacent gap medium at pt.
  double reflection(const Material& adjacent, const SpectralPoint& pt) const;

  bool is_phase_reflector() const {
    return std::holds_alternative<PhaseReflector>(model_);
  }

 private:
  struct PhaseReflector {
    double rp;
    double rs;
  };
  struct CoatedHalfSpace {
    std::vector<Layer> coatings;
    Material substrate;
  };

  explicit Plate(std::variant<PhaseReflector, CoatedHalfSpace> m)
      : model_(std::move(m)) {}

  std::variant<PhaseReflector, CoatedHalfSpace> model_;
};

}  // namespace casimir
