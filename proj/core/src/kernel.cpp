#include "casimir/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kNFloor = 1e-15;
constexpr double kDressingFloor = 1e-30;

/// Everything the point integrands need: gap-layer wave vectors, round-trip
/// factors, plate reflections, and the coefficients of the stack between
/// layers 1 and n. For n = 1 layers 1 and n coincide; the full propagation
/// is carried by e1 and en = 1 so that no round trip is counted twice.
struct GapCoefficients {
  double kappa1 = 0.0;
  double kappan = 0.0;
  double e1 = 1.0;  ///< e^{-2 kappa_1 d_1}
  double en = 1.0;  ///< e^{-2 kappa_n d_n}
  double u1 = 0.0;  ///< 1 - e1, via expm1
  double un = 0.0;  ///< 1 - en
  double r_left = 0.0;
  double r_right = 0.0;
  StackCoefficients inner;
};

GapCoefficients gap_coefficients(const SystemConfig& sys,
                                 const SpectralPoint& pt) {
  sys.validate();
  const auto& medium = sys.medium;
  const std::size_t n = medium.size();
  const Material& m1 = medium.front().material;
  const Material& mn = medium.back().material;

  GapCoefficients g;
  g.kappa1 = m1.kappa(pt.xi, pt.k);
  g.kappan = (n == 1) ? g.kappa1 : mn.kappa(pt.xi, pt.k);
  const double dn = (n == 1) ? 0.0 : medium.back().d;
  g.e1 = decaying_exponential(2.0 * g.kappa1 * medium.front().d);
  g.en = decaying_exponential(2.0 * g.kappan * dn);
  g.u1 = -std::expm1(-2.0 * g.kappa1 * medium.front().d);
  g.un = -std::expm1(-2.0 * g.kappan * dn);
  g.inner = (n <= 1)
                ? StackCoefficients::identity()
                : stack_coefficients(
                      std::span<const Layer>(medium).subspan(1, n - 2), m1, mn,
                      pt);
  g.r_left = sys.plate_left.reflection(m1, pt);
  g.r_right = sys.plate_right.reflection(mn, pt);
  return g;
}

/// N = 1 - (r_fwd R_L e1 + r_bwd R_R en) - a R_L R_R e1 en, evaluated in the
/// form suited to the regime. Where the round trips are short (u1 + un
/// small) the identical rearrangement over u = 1 - e^{-2 kappa d},
///   N = [1 - r_fwd R_L - r_bwd R_R - a R_L R_R]
///       + r_fwd R_L u1 + r_bwd R_R un + a R_L R_R (u1 + un - u1 un),
/// keeps N accurate (tiny positive) for perfect mirrors instead of rounding
/// the cancellation to zero. Where the round trips are long the plain form
/// yields N = 1 and ln N = 0 exactly, which the u-form would turn into
/// round-off noise.
double n_from(const GapCoefficients& g) {
  const double rfl = g.inner.r_fwd * g.r_left;
  const double rbr = g.inner.r_bwd * g.r_right;
  const double arr = g.inner.a * g.r_left * g.r_right;
  double n;
  if (g.u1 + g.un <= 0.5) {
    const double bracket = 1.0 - rfl - rbr - arr;
    n = bracket + rfl * g.u1 + rbr * g.un +
        arr * (g.u1 + g.un - g.u1 * g.un);
  } else {
    n = 1.0 - (rfl * g.e1 + rbr * g.en) - arr * g.e1 * g.en;
  }
  if (!(n > 0.0)) {
    throw DegenerateError(
        "n_denominator: N is not positive (unphysical configuration or zero "
        "gap)");
  }
  return n;
}

double force_left_from(const GapCoefficients& g, double n) {
  return g.kappa1 * (g.inner.r_fwd + g.inner.a * g.r_right * g.en) *
         g.r_left * g.e1 / n;
}

double force_right_from(const GapCoefficients& g, double n) {
  return -g.kappan * (g.inner.r_bwd + g.inner.a * g.r_left * g.e1) *
         g.r_right * g.en / n;
}

double force_stack_from(const GapCoefficients& g, double n) {
  return (g.kappan * g.inner.r_bwd * g.r_right * g.en -
          g.kappa1 * g.inner.r_fwd * g.r_left * g.e1) /
             n +
         (g.kappan - g.kappa1) * (g.inner.a / n) * g.r_left * g.r_right *
             g.e1 * g.en;
}

/// ln N with full relative accuracy on both flanks: when the total
/// scattering sum S (N = 1 - S) is small, ln N = log1p(-S) avoids the
/// 1 - S rounding; elsewhere N itself is well separated from 1.
double log_n_from(const GapCoefficients& g, double n) {
  const double s = g.inner.r_fwd * g.r_left * g.e1 +
                   g.inner.r_bwd * g.r_right * g.en +
                   g.inner.a * g.r_left * g.r_right * g.e1 * g.en;
  return s <= 0.5 ? std::log1p(-s) : std::log(n);
}

void check_layer_index(const SystemConfig& sys, std::size_t j,
                       const char* what) {
  if (j < 1 || j > sys.medium.size()) {
    throw ValidationError(std::string(what) + ": layer index out of range");
  }
}

}  // namespace

void SystemConfig::validate() const {
  if (medium.empty()) {
    throw ValidationError("system: medium must contain at least one layer");
  }
  for (std::size_t i = 0; i < medium.size(); ++i) {
    if (!std::isfinite(medium[i].d) || medium[i].d < 0.0) {
      throw ValidationError("layer " + std::to_string(i + 1) +
                            ": d must be finite and >= 0");
    }
  }
}

double SystemConfig::total_gap() const {
  double d = 0.0;
  for (const auto& layer : medium) d += layer.d;
  return d;
}

SystemConfig mirrored(const SystemConfig& sys) {
  SystemConfig out{sys.plate_right, sys.medium, sys.plate_left};
  std::reverse(out.medium.begin(), out.medium.end());
  return out;
}

double n_denominator(const SystemConfig& sys, const SpectralPoint& pt) {
  const double n = n_from(gap_coefficients(sys, pt));
  if (n <= kNFloor) {
    throw DegenerateError(
        "n_denominator: N <= 1e-15 (unphysical configuration or zero gap)");
  }
  return n;
}

double force_left_integrand(const SystemConfig& sys, const SpectralPoint& pt) {
  const GapCoefficients g = gap_coefficients(sys, pt);
  return force_left_from(g, n_from(g));
}

double force_right_integrand(const SystemConfig& sys,
                             const SpectralPoint& pt) {
  const GapCoefficients g = gap_coefficients(sys, pt);
  return force_right_from(g, n_from(g));
}

double force_stack_integrand(const SystemConfig& sys,
                             const SpectralPoint& pt) {
  const GapCoefficients g = gap_coefficients(sys, pt);
  return force_stack_from(g, n_from(g));
}

double stress_zz_integrand(const SystemConfig& sys, std::size_t j,
                           const SpectralPoint& pt) {
  sys.validate();
  check_layer_index(sys, j, "stress_zz_integrand");
  const auto& medium = sys.medium;
  const std::size_t n = medium.size();
  const double dj = medium[j - 1].d;
  if (dj <= 0.0) {
    throw DegenerateError("stress_zz_integrand: layer has zero thickness");
  }
  const Material& m1 = medium.front().material;
  const Material& mn = medium.back().material;
  const Material& mj = medium[j - 1].material;
  const double kappaj = mj.kappa(pt.xi, pt.k);

  // Plate-dressed reflection seen from layer j looking left. For j = 1 it is
  // the bare plate; otherwise the stack between layers 1 and j is dressed
  // with R_L through the round trip in layer 1.
  double r_minus;
  if (j == 1) {
    r_minus = sys.plate_left.reflection(m1, pt);
  } else {
    const StackCoefficients s = stack_coefficients(
        std::span<const Layer>(medium).subspan(1, j - 2), m1, mj, pt);
    const double rl = sys.plate_left.reflection(m1, pt);
    const double e1 = decaying_exponential(2.0 * m1.kappa(pt.xi, pt.k) *
                                           medium.front().d);
    const double den = 1.0 - s.r_fwd * rl * e1;
    if (std::abs(den) <= kDressingFloor) {
      throw DegenerateError("stress_zz_integrand: degenerate left dressing");
    }
    r_minus = (s.r_bwd + s.a * rl * e1) / den;
  }

  // Looking right: bare plate for j = n, dressed stack otherwise.
  double r_plus;
  if (j == n) {
    r_plus = sys.plate_right.reflection(mn, pt);
  } else {
    const StackCoefficients s = stack_coefficients(
        std::span<const Layer>(medium).subspan(j, n - 1 - j), mj, mn, pt);
    const double rr = sys.plate_right.reflection(mn, pt);
    const double en = decaying_exponential(2.0 * mn.kappa(pt.xi, pt.k) *
                                           medium.back().d);
    const double den = 1.0 - s.r_bwd * rr * en;
    if (std::abs(den) <= kDressingFloor) {
      throw DegenerateError("stress_zz_integrand: degenerate right dressing");
    }
    r_plus = (s.r_fwd + s.a * rr * en) / den;
  }

  const double v = r_minus * r_plus * decaying_exponential(2.0 * kappaj * dj);
  const double den = 1.0 - v;
  if (den <= kNFloor) {
    throw DegenerateError("stress_zz_integrand: denominator below floor");
  }
  return kappaj * v / den;
}

KernelValue log_denominator(const SystemConfig& sys, const SpectralPoint& pt) {
  const GapCoefficients g = gap_coefficients(sys, pt);
  const double n = n_from(g);
  if (n <= kNFloor) {
    throw DegenerateError(
        "n_denominator: N <= 1e-15 (unphysical configuration or zero gap)");
  }
  return {log_n_from(g, n), pt.q};
}

double energy_integrand(const SystemConfig& sys, double xi, double k) {
  return log_denominator(sys, {xi, k, Polarization::p}).value +
         log_denominator(sys, {xi, k, Polarization::s}).value;
}

namespace {

struct SplitCoefficients {
  StackCoefficients left;   ///< stack between layers 1 and l
  StackCoefficients right;  ///< stack between layers l and n
  double e1 = 1.0;
  double en = 1.0;
  double xl = 1.0;  ///< e^{-2 kappa_l d_l}
  double rl = 0.0;
  double rr = 0.0;
};

SplitCoefficients split_at(const SystemConfig& sys, std::size_t l,
                           const SpectralPoint& pt) {
  sys.validate();
  const std::size_t n = sys.medium.size();
  if (l <= 1 || l >= n) {
    throw ValidationError(
        "effective_denominator: l must be an intermediate layer (1 < l < n)");
  }
  const auto& medium = sys.medium;
  const Material& m1 = medium.front().material;
  const Material& ml = medium[l - 1].material;
  const Material& mn = medium.back().material;

  SplitCoefficients s;
  s.left = stack_coefficients(
      std::span<const Layer>(medium).subspan(1, l - 2), m1, ml, pt);
  s.right = stack_coefficients(
      std::span<const Layer>(medium).subspan(l, n - 1 - l), ml, mn, pt);
  s.e1 = decaying_exponential(2.0 * m1.kappa(pt.xi, pt.k) * medium.front().d);
  s.en = decaying_exponential(2.0 * mn.kappa(pt.xi, pt.k) * medium.back().d);
  s.xl = decaying_exponential(2.0 * ml.kappa(pt.xi, pt.k) * medium[l - 1].d);
  s.rl = sys.plate_left.reflection(m1, pt);
  s.rr = sys.plate_right.reflection(mn, pt);
  return s;
}

double effective_from(const SplitCoefficients& s) {
  return (1.0 - s.left.r_fwd * s.rl * s.e1) *
             (1.0 - s.right.r_bwd * s.rr * s.en) -
         s.xl * (s.left.a * s.rl * s.e1 + s.left.r_bwd) *
             (s.right.a * s.rr * s.en + s.right.r_fwd);
}

}  // namespace

double effective_denominator(const SystemConfig& sys, std::size_t l,
                             const SpectralPoint& pt) {
  return effective_from(split_at(sys, l, pt));
}

KernelValue log_effective_denominator(const SystemConfig& sys, std::size_t l,
                                      const SpectralPoint& pt) {
  const SplitCoefficients s = split_at(sys, l, pt);
  // N_l = 1 - S with S assembled from individually accurate products, so
  // log1p keeps full relative accuracy while N_l is close to 1.
  const double p = s.left.r_fwd * s.rl * s.e1;
  const double q = s.right.r_bwd * s.rr * s.en;
  const double xac = s.xl * (s.left.a * s.rl * s.e1 + s.left.r_bwd) *
                     (s.right.a * s.rr * s.en + s.right.r_fwd);
  const double sum = p + q - p * q + xac;
  if (sum <= 0.5) {
    return {std::log1p(-sum), pt.q};
  }
  const double direct = effective_from(s);
  // Below ~1e-12 the closed form is dominated by cancellation noise; the
  // factorization N * D_l is exact algebra and stays accurate there.
  if (direct > 1e-12) {
    return {std::log(direct), pt.q};
  }
  const double dl = 1.0 - s.left.r_bwd * s.right.r_fwd * s.xl;
  const double nl = n_from(gap_coefficients(sys, pt)) * dl;
  if (!(nl > 0.0)) {
    throw DegenerateError("effective denominator is not positive");
  }
  return {std::log(nl), pt.q};
}

IntegrandComponents integrand_components(const SystemConfig& sys,
                                         const SpectralPoint& pt) {
  const GapCoefficients g = gap_coefficients(sys, pt);
  const double n = n_from(g);
  IntegrandComponents c;
  c.log_n = log_n_from(g, n);
  c.force_left = force_left_from(g, n);
  c.force_right = force_right_from(g, n);
  c.force_stack = force_stack_from(g, n);
  return c;
}

IntegrandComponents integrand_components_two_medium(const SystemConfig& sys,
                                                    const SpectralPoint& pt) {
  sys.validate();
  if (sys.medium.size() != 2) {
    throw ValidationError(
        "two-medium route requires a medium of exactly two layers");
  }
  const Material& m1 = sys.medium[0].material;
  const Material& m2 = sys.medium[1].material;
  const double kappa1 = m1.kappa(pt.xi, pt.k);
  const double kappa2 = m2.kappa(pt.xi, pt.k);
  const double e1 = decaying_exponential(2.0 * kappa1 * sys.medium[0].d);
  const double e2 = decaying_exponential(2.0 * kappa2 * sys.medium[1].d);
  const double u1 = -std::expm1(-2.0 * kappa1 * sys.medium[0].d);
  const double u2 = -std::expm1(-2.0 * kappa2 * sys.medium[1].d);
  const double r12 = single_interface(m1, m2, pt).r;
  const double rl = sys.plate_left.reflection(m1, pt);
  const double rr = sys.plate_right.reflection(m2, pt);

  // Same regime-switched rearrangement as n_from, specialized to
  // N2 = 1 - r12 (R_L e1 - R_R e2) - R_L R_R e1 e2.
  double n2;
  if (u1 + u2 <= 0.5) {
    n2 = (1.0 - r12 * (rl - rr) - rl * rr) + r12 * (rl * u1 - rr * u2) +
         rl * rr * (u1 + u2 - u1 * u2);
  } else {
    n2 = 1.0 - r12 * (rl * e1 - rr * e2) - rl * rr * e1 * e2;
  }
  if (!(n2 > 0.0)) {
    throw DegenerateError("two-medium route: N is not positive");
  }
  const double s2 = r12 * (rl * e1 - rr * e2) + rl * rr * e1 * e2;
  IntegrandComponents c;
  c.log_n = s2 <= 0.5 ? std::log1p(-s2) : std::log(n2);
  c.force_left = kappa1 * (r12 + rr * e2) * rl * e1 / n2;
  c.force_right = -kappa2 * (-r12 + rl * e1) * rr * e2 / n2;
  c.force_stack = (kappa2 * (-r12) * rr * e2 - kappa1 * r12 * rl * e1) / n2 +
                  (kappa2 - kappa1) * (1.0 / n2) * rl * rr * e1 * e2;
  return c;
}

}  // namespace casimir
