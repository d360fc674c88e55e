#pragma once

// Independent 2x2 transfer-matrix evaluation of layer-stack Fresnel
// coefficients, used as an oracle against the recursion-based production
// path. Everything here is computed from scratch: interface amplitudes in
// surface-admittance form, matrix products for propagation, coefficients
// recovered from the total matrix. Test-only.

#include <cmath>
#include <span>

#include "casimir/fresnel.hpp"

namespace oracle {

using casimir::Layer;
using casimir::Material;
using casimir::Polarization;
using casimir::SpectralPoint;

struct Mat2 {
  double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;
};

inline Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
          x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
}

struct Coefficients {
  double r_fwd, r_bwd, t_fwd, t_bwd, a;
};

inline double kappa_of(const Material& m, const SpectralPoint& pt) {
  const double ratio = pt.xi / 299792458.0;
  return std::sqrt(m.eps_at(pt.xi) * m.mu_at(pt.xi) * ratio * ratio +
                   pt.k * pt.k);
}

/// Interface amplitudes in admittance form: y = kappa/eps (p) or kappa/mu
/// (s); r = (y1 - y2)/(y1 + y2), t = sqrt(g/gs) (1 + r).
inline void interface_amplitudes(const Material& m1, const Material& m2,
                                 const SpectralPoint& pt, double* r,
                                 double* t12, double* t21) {
  const double k1 = kappa_of(m1, pt);
  const double k2 = kappa_of(m2, pt);
  double y1, y2;
  if (pt.q == Polarization::p) {
    y1 = k1 / m1.eps_at(pt.xi);
    y2 = k2 / m2.eps_at(pt.xi);
  } else {
    y1 = k1 / m1.mu_at(pt.xi);
    y2 = k2 / m2.mu_at(pt.xi);
  }
  *r = (y1 - y2) / (y1 + y2);
  const double gs12 = m1.mu_at(pt.xi) / m2.mu_at(pt.xi);
  const double g12 = (pt.q == Polarization::p)
                         ? m1.eps_at(pt.xi) / m2.eps_at(pt.xi)
                         : gs12;
  *t12 = std::sqrt(g12 / gs12) * (1.0 + *r);
  *t21 = std::sqrt(gs12 / g12) * (1.0 - *r);
}

/// Transfer matrix of one interface: with S = [[r, t'],[t, r']] the wave
/// matrix is (1/t') [[t t' - r r', r'], [-r, 1]].
inline Mat2 interface_matrix(const Material& m1, const Material& m2,
                             const SpectralPoint& pt) {
  double r, t12, t21;
  interface_amplitudes(m1, m2, pt, &r, &t12, &t21);
  const double rp = -r;  // r21
  return {(t12 * t21 - r * rp) / t21, rp / t21, -r / t21, 1.0 / t21};
}

/// Propagation over thickness d: rightward amplitudes decay, leftward grow.
inline Mat2 propagation_matrix(const Material& m, double d,
                               const SpectralPoint& pt) {
  const double kd = kappa_of(m, pt) * d;
  return {std::exp(-kd), 0.0, 0.0, std::exp(kd)};
}

inline double interface_det(const Material& m1, const Material& m2,
                            const SpectralPoint& pt) {
  double r, t12, t21;
  interface_amplitudes(m1, m2, pt, &r, &t12, &t21);
  return t12 / t21;
}

inline Coefficients stack_coefficients(std::span<const Layer> layers,
                                       const Material& bound_left,
                                       const Material& bound_right,
                                       const SpectralPoint& pt) {
  const Material* previous = &bound_left;
  Mat2 total;
  double det = 1.0;  // det(product) = product of elementary dets;
                     // propagation matrices are unimodular
  for (const Layer& layer : layers) {
    total = mul(interface_matrix(*previous, layer.material, pt), total);
    det *= interface_det(*previous, layer.material, pt);
    total = mul(propagation_matrix(layer.material, layer.d, pt), total);
    previous = &layer.material;
  }
  total = mul(interface_matrix(*previous, bound_right, pt), total);
  det *= interface_det(*previous, bound_right, pt);

  Coefficients c;
  c.r_fwd = -total.a21 / total.a22;
  c.r_bwd = total.a12 / total.a22;
  c.t_bwd = 1.0 / total.a22;
  c.t_fwd = det / total.a22;
  c.a = total.a11 / total.a22;
  return c;
}

}  // namespace oracle
