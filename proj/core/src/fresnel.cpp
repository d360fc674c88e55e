#include "casimir/fresnel.hpp"

#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kDenominatorFloor = 1e-30;
constexpr double kExpFlushLimit = 1e-300;

void validate_layer(const Layer& layer, std::size_t index) {
  if (!std::isfinite(layer.d) || layer.d < 0.0) {
    throw ValidationError("layer " + std::to_string(index + 1) +
                          ": d must be finite and >= 0");
  }
}

}  // namespace

double decaying_exponential(double arg) {
  const double v = std::exp(-arg);
  return v < kExpFlushLimit ? 0.0 : v;
}

InterfaceCoefficients single_interface(const Material& m1, const Material& m2,
                                       const SpectralPoint& pt) {
  const double kappa1 = m1.kappa(pt.xi, pt.k);
  const double kappa2 = m2.kappa(pt.xi, pt.k);
  const double mu1 = m1.mu_at(pt.xi);
  const double mu2 = m2.mu_at(pt.xi);
  // r = (kappa1 - g kappa2)/(kappa1 + g kappa2) with g the eps (p) or mu (s)
  // ratio, evaluated cross-multiplied: the swapped interface then yields the
  // bit-exact negation, which keeps transparent stacks transparent to the
  // last ulp when their round-trip factors degenerate to 1.
  double c1, c2;
  if (pt.q == Polarization::p) {
    c1 = m2.eps_at(pt.xi) * kappa1;
    c2 = m1.eps_at(pt.xi) * kappa2;
  } else {
    c1 = mu2 * kappa1;
    c2 = mu1 * kappa2;
  }
  const double den = c1 + c2;
  if (std::abs(den) <= kDenominatorFloor) {
    throw DegenerateError("single_interface: vanishing denominator");
  }
  const double r = (c1 - c2) / den;
  const double gamma_s = mu1 / mu2;
  const double gamma = (pt.q == Polarization::p)
                           ? m1.eps_at(pt.xi) / m2.eps_at(pt.xi)
                           : gamma_s;
  const double t = std::sqrt(gamma / gamma_s) * (1.0 + r);
  return {r, t};
}

StackCoefficients interface_stack(const Material& m1, const Material& m2,
                                  const SpectralPoint& pt) {
  const InterfaceCoefficients fwd = single_interface(m1, m2, pt);
  const InterfaceCoefficients bwd = single_interface(m2, m1, pt);
  StackCoefficients s;
  s.r_fwd = fwd.r;
  s.r_bwd = bwd.r;
  s.t_fwd = fwd.t;
  s.t_bwd = bwd.t;
  // t12 t21 - r12 r21 = 1 is an algebraic identity of a bare interface;
  // storing it exactly keeps the composed a well conditioned where the
  // denominators nearly cancel.
  s.a = 1.0;
  return s;
}

StackCoefficients compose(const StackCoefficients& left, const Spacer& spacer,
                          const StackCoefficients& right) {
  if (!std::isfinite(spacer.d) || spacer.d < 0.0) {
    throw ValidationError("compose: spacer thickness must be finite and >= 0");
  }
  const double x = decaying_exponential(2.0 * spacer.kappa * spacer.d);
  const double y = decaying_exponential(spacer.kappa * spacer.d);
  const double den = 1.0 - left.r_bwd * right.r_fwd * x;
  if (std::abs(den) <= kDenominatorFloor) {
    throw DegenerateError("compose: resonant spacer denominator below floor");
  }
  StackCoefficients s;
  s.r_fwd = (left.r_fwd + left.a * right.r_fwd * x) / den;
  s.r_bwd = (right.r_bwd + right.a * left.r_bwd * x) / den;
  s.t_fwd = left.t_fwd * right.t_fwd * y / den;
  s.t_bwd = right.t_bwd * left.t_bwd * y / den;
  s.a = (left.a * right.a * x - left.r_fwd * right.r_bwd) / den;
  return s;
}

StackCoefficients stack_coefficients(std::span<const Layer> layers,
                                     const Material& bound_left,
                                     const Material& bound_right,
                                     const SpectralPoint& pt) {
  if (layers.empty()) {
    return interface_stack(bound_left, bound_right, pt);
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    validate_layer(layers[i], i);
  }
  StackCoefficients acc = interface_stack(bound_left, layers[0].material, pt);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const Material& next = (i + 1 < layers.size()) ? layers[i + 1].material
                                                   : bound_right;
    const Spacer spacer{layers[i].material.kappa(pt.xi, pt.k), layers[i].d};
    acc = compose(acc, spacer, interface_stack(layers[i].material, next, pt));
  }
  return acc;
}

Plate Plate::phase_reflector(double rp, double rs) {
  if (!std::isfinite(rp) || std::abs(rp) > 1.0) {
    throw ValidationError("plate: rp must lie in [-1, 1]");
  }
  if (!std::isfinite(rs) || std::abs(rs) > 1.0) {
    throw ValidationError("plate: rs must lie in [-1, 1]");
  }
  return Plate(PhaseReflector{rp, rs});
}

Plate Plate::coated_half_space(std::vector<Layer> coatings,
                               Material substrate) {
  for (std::size_t i = 0; i < coatings.size(); ++i) {
    validate_layer(coatings[i], i);
  }
  return Plate(CoatedHalfSpace{std::move(coatings), std::move(substrate)});
}

double Plate::reflection(const Material& adjacent,
                         const SpectralPoint& pt) const {
  if (const auto* pr = std::get_if<PhaseReflector>(&model_)) {
    return pt.q == Polarization::p ? pr->rp : pr->rs;
  }
  const auto& hs = std::get<CoatedHalfSpace>(model_);
  return stack_coefficients(hs.coatings, adjacent, hs.substrate, pt).r_fwd;
}

}  // namespace casimir
