#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "casimir/checks.hpp"
#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/threading.hpp"
#include "support/generators.hpp"

using namespace casimir;

namespace {

double ideal_energy(double d) {
  return -std::numbers::pi * std::numbers::pi * hbar * speed_of_light /
         (720.0 * d * d * d);
}

double ideal_force(double d) {
  return std::numbers::pi * std::numbers::pi * hbar * speed_of_light /
         (240.0 * d * d * d * d);
}

}  // namespace

TEST_CASE("quadrature spec validation") {
  QuadratureSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.rel_tol = 0.0;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.rel_tol = 0.1;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec = {};
  spec.max_levels = 3;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec = {};
  spec.abs_floor = -1.0;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
}

TEST_CASE("prefactor ratio between forces and energy is exactly two") {
  CHECK(force_prefactor / energy_prefactor == 2.0);
}

TEST_CASE("spectrum integral reproduces closed forms") {
  const double s = 1e15;
  const double d = 1e-6;
  QuadratureSpec spec;
  spec.xi_scale = s;

  SUBCASE("f = exp(-xi/s) k exp(-2kd) integrates to s/(4 d^3)") {
    const auto result = integrate_spectrum(
        [=](double xi, double k) {
          return std::exp(-xi / s) * k * std::exp(-2.0 * k * d);
        },
        spec);
    CHECK(result.value == doctest::Approx(2.5e32).epsilon(1e-8));
    CHECK(result.est_error <= spec.rel_tol * std::abs(result.value));
  }

  SUBCASE("f = exp(-xi/s) exp(-2kd) integrates to s/(4 d^2)") {
    const auto result = integrate_spectrum(
        [=](double xi, double k) {
          return std::exp(-xi / s) * std::exp(-2.0 * k * d);
        },
        spec);
    CHECK(result.value == doctest::Approx(2.5e26).epsilon(1e-8));
  }

  SUBCASE("f = 0 integrates to exactly (0, 0)") {
    const auto result = integrate_spectrum([](double, double) { return 0.0; },
                                           spec);
    CHECK(result.value == 0.0);
    CHECK(result.est_error == 0.0);
  }
}

TEST_CASE("non-integrable input raises NonConvergence") {
  QuadratureSpec spec;
  spec.xi_scale = 1.0;
  spec.max_levels = 5;
  CHECK_THROWS_AS(
      integrate_spectrum([](double xi, double k) { return 1.0 / (xi + k); },
                         spec),
      NonConvergence);
}

TEST_CASE("non-finite integrands are rejected") {
  QuadratureSpec spec;
  spec.xi_scale = 1.0;
  CHECK_THROWS_AS(integrate_spectrum(
                      [](double, double) {
                        return std::numeric_limits<double>::quiet_NaN();
                      },
                      spec),
                  DegenerateError);
}

TEST_CASE("the bare spectrum integral agrees with the system integral") {
  const SystemConfig sys = checks::ideal_mirror_vacuum(1e-6);
  QuadratureSpec spec;
  spec.xi_scale = speed_of_light / 1e-6;
  const auto raw = integrate_spectrum(
      [&sys](double xi, double k) { return energy_integrand(sys, xi, k); },
      spec);
  const double via_spectrum = energy_prefactor * raw.value;
  CHECK(gen::rel_dev(via_spectrum, casimir_energy(sys)) < 1e-6);
  CHECK(gen::rel_dev(via_spectrum, ideal_energy(1e-6)) < 1e-6);
}

TEST_CASE("ideal mirrors reproduce the analytic energy and force") {
  const double d = 1e-6;
  const CasimirResult r = casimir_forces(checks::ideal_mirror_vacuum(d));
  CHECK(r.energy == doctest::Approx(-4.3337525748e-10).epsilon(1e-3));
  CHECK(r.energy == doctest::Approx(ideal_energy(d)).epsilon(1e-3));
  CHECK(r.force_left == doctest::Approx(1.3001257724e-03).epsilon(1e-3));
  CHECK(r.force_left == doctest::Approx(ideal_force(d)).epsilon(1e-3));
  CHECK(r.force_right == doctest::Approx(-ideal_force(d)).epsilon(1e-3));
  // symmetric system: no net force on the (homogeneous) medium
  CHECK(std::abs(r.force_stack) <=
        10.0 * r.est_error * std::abs(r.force_left));
}

TEST_CASE("doubling the gap scales the ideal energy by one eighth") {
  const double e1 = casimir_energy(checks::ideal_mirror_vacuum(1e-6));
  const double e2 = casimir_energy(checks::ideal_mirror_vacuum(2e-6));
  CHECK(e1 / e2 == doctest::Approx(8.0).epsilon(1e-3));
}

TEST_CASE("zero reflection gives zero energy and forces") {
  SystemConfig sys;
  sys.plate_left = Plate::phase_reflector(0.0, 0.0);
  sys.plate_right = Plate::phase_reflector(0.0, 0.0);
  sys.medium = {Layer{Material::constant(2.25), 1e-6}};
  const CasimirResult r = casimir_forces(sys);
  CHECK(r.energy == 0.0);
  CHECK(r.force_left == 0.0);
  CHECK(r.force_right == 0.0);
  CHECK(r.force_stack == 0.0);
  CHECK(r.est_error == 0.0);
}

TEST_CASE("identical dielectric plates attract under the sign convention") {
  SystemConfig sys;
  sys.plate_left = Plate::coated_half_space({}, Material::constant(2.25));
  sys.plate_right = Plate::coated_half_space({}, Material::constant(2.25));
  sys.medium = {Layer{Material::vacuum(), 5e-7}};
  const CasimirResult r = casimir_forces(sys);
  CHECK(r.energy < 0.0);
  CHECK(r.force_left > 0.0);
  CHECK(r.force_right < 0.0);
  CHECK(gen::rel_dev(r.force_left, -r.force_right) < 1e-12);
}

TEST_CASE("result invariants: polarization parts and the sum rule") {
  const CasimirResult r = casimir_forces(checks::asymmetric_three_layer());
  CHECK(r.energy == r.p.energy + r.s.energy);
  CHECK(r.force_left == r.p.force_left + r.s.force_left);
  CHECK(r.force_right == r.p.force_right + r.s.force_right);
  CHECK(r.force_stack == r.p.force_stack + r.s.force_stack);
  const double scale =
      std::max(std::abs(r.force_left), std::abs(r.force_right));
  CHECK(std::abs(r.force_left + r.force_right + r.force_stack) <=
        10.0 * r.est_error * scale);
  CHECK(r.evaluations > 0);
  CHECK(&r.part(Polarization::p) == &r.p);
  CHECK(&r.part(Polarization::s) == &r.s);
}

TEST_CASE("runs are deterministic and thread-count independent") {
  const SystemConfig sys = checks::asymmetric_three_layer();
  set_max_threads(1);
  const CasimirResult a = casimir_forces(sys);
  const CasimirResult b = casimir_forces(sys);
  set_max_threads(8);
  const CasimirResult c = casimir_forces(sys);
  set_max_threads(0);
  CHECK(a.energy == b.energy);
  CHECK(a.energy == c.energy);
  CHECK(a.force_left == c.force_left);
  CHECK(a.force_right == c.force_right);
  CHECK(a.force_stack == c.force_stack);
  CHECK(a.est_error == c.est_error);
  CHECK(a.evaluations == c.evaluations);
}

TEST_CASE("tightening the tolerance moves the result less than est_error") {
  const SystemConfig sys = checks::asymmetric_three_layer();
  QuadratureSpec loose;
  loose.rel_tol = 1e-6;
  QuadratureSpec tight;
  tight.rel_tol = 1e-7;
  const CasimirResult a = casimir_forces(sys, loose);
  const CasimirResult b = casimir_forces(sys, tight);
  CHECK(std::abs(a.energy - b.energy) <=
        std::max(a.est_error * std::abs(a.energy), 1e-30));
}

TEST_CASE("four vacuum layers reproduce the single-layer result") {
  const auto [one, four] = checks::lifshitz_reduction_pair();
  const CasimirResult a = casimir_forces(one);
  const CasimirResult b = casimir_forces(four);
  CHECK(gen::rel_dev(a.energy, b.energy) < 1e-9);
  CHECK(gen::rel_dev(a.force_left, b.force_left) < 1e-9);
  CHECK(gen::rel_dev(a.force_right, b.force_right) < 1e-9);
}

TEST_CASE("mirroring preserves the energy and swaps the forces") {
  const SystemConfig sys = checks::asymmetric_five_layer();
  const CasimirResult r = casimir_forces(sys);
  const CasimirResult m = casimir_forces(mirrored(sys));
  CHECK(gen::rel_dev(m.energy, r.energy) < 1e-10);
  CHECK(gen::rel_dev(m.force_left, -r.force_right) < 1e-9);
  CHECK(gen::rel_dev(m.force_right, -r.force_left) < 1e-9);
}

TEST_CASE("the three perfect-mirror conventions differ only where expected") {
  SystemConfig sys;
  sys.medium = {Layer{Material::vacuum(), 3e-7},
                Layer{Material::constant(2.25), 2e-7},
                Layer{Material::vacuum(), 5e-7}};
  double energy[3];
  double s_part[3];
  const std::pair<double, double> conventions[3] = {
      {1.0, -1.0}, {-1.0, -1.0}, {1.0, 1.0}};
  for (int i = 0; i < 3; ++i) {
    sys.plate_left = Plate::phase_reflector(conventions[i].first,
                                            conventions[i].second);
    sys.plate_right = sys.plate_left;
    const CasimirResult r = casimir_forces(sys);
    energy[i] = r.energy;
    s_part[i] = r.s.energy;
  }
  CHECK(gen::rel_dev(energy[0], energy[1]) > 1e-3);
  CHECK(gen::rel_dev(energy[0], energy[2]) > 1e-3);
  CHECK(gen::rel_dev(energy[1], energy[2]) > 1e-3);
  // s amplitudes agree between (1,-1) and (-1,-1); p parts differ
  CHECK(gen::rel_dev(s_part[0], s_part[1]) < 1e-10);
}

TEST_CASE("effective energy keeps the gap derivatives of the energy") {
  const SystemConfig sys = checks::asymmetric_three_layer();
  QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  auto derivative = [&](auto&& f, std::size_t index) {
    const double d0 = sys.medium[index].d;
    const double step = 1e-3 * d0;
    SystemConfig plus = sys;
    SystemConfig minus = sys;
    plus.medium[index].d = d0 + step;
    minus.medium[index].d = d0 - step;
    return (f(plus) - f(minus)) / (2.0 * step);
  };
  const double dE =
      derivative([&](const SystemConfig& s) { return casimir_energy(s, spec); },
                 0);
  const double dEl = derivative(
      [&](const SystemConfig& s) { return effective_energy(s, 2, spec); }, 0);
  CHECK(gen::rel_dev(dE, dEl) < 1e-9);
  const double fl = casimir_forces(sys, spec).force_left;
  CHECK(gen::rel_dev(fl, dEl) < 1e-5);
}

TEST_CASE("with plates removed the effective energy is the two-stack "
          "interaction energy") {
  SystemConfig sys = checks::asymmetric_five_layer();
  sys.plate_left = Plate::phase_reflector(0.0, 0.0);
  sys.plate_right = Plate::phase_reflector(0.0, 0.0);
  QuadratureSpec spec;
  const double el = effective_energy(sys, 3, spec);

  QuadratureSpec direct = spec;
  direct.xi_scale = speed_of_light / sys.total_gap();
  const auto& medium = sys.medium;
  const auto interaction = integrate_spectrum(
      [&](double xi, double k) {
        double sum = 0.0;
        for (const Polarization q : {Polarization::p, Polarization::s}) {
          const SpectralPoint pt{xi, k, q};
          const auto left = stack_coefficients(
              std::span<const Layer>(medium).subspan(1, 1),
              medium.front().material, medium[2].material, pt);
          const auto right = stack_coefficients(
              std::span<const Layer>(medium).subspan(3, 1),
              medium[2].material, medium.back().material, pt);
          const double xl = decaying_exponential(
              2.0 * medium[2].material.kappa(xi, k) * medium[2].d);
          sum += std::log(1.0 - left.r_bwd * right.r_fwd * xl);
        }
        return sum;
      },
      direct);
  CHECK(gen::rel_dev(el, energy_prefactor * interaction.value) < 1e-10);
}

TEST_CASE("effective energy saturates as the intermediate layer widens") {
  SystemConfig sys = checks::asymmetric_three_layer();
  QuadratureSpec spec;
  const double base = sys.medium[1].d;
  double previous_gap = -1.0;
  const double saturated = [&] {
    SystemConfig far = sys;
    far.medium[1].d = 50.0 * base;
    return effective_energy(far, 2, spec);
  }();
  for (const double factor : {1.0, 2.0, 4.0}) {
    SystemConfig widened = sys;
    widened.medium[1].d = factor * base;
    const double gap = std::abs(effective_energy(widened, 2, spec) -
                                saturated);
    if (previous_gap >= 0.0) CHECK(gap < previous_gap);
    previous_gap = gap;
  }
}

TEST_CASE("effective energy rejects non-intermediate layers") {
  const SystemConfig sys = checks::asymmetric_three_layer();
  CHECK_THROWS_AS(effective_energy(sys, 1, {}), ValidationError);
  CHECK_THROWS_AS(effective_energy(sys, 3, {}), ValidationError);
}

TEST_CASE("spectral integrals require open gaps") {
  SystemConfig sys = checks::ideal_mirror_vacuum(1e-6);
  sys.medium.front().d = 0.0;
  CHECK_THROWS_AS(casimir_energy(sys), DegenerateError);
  CHECK_THROWS_AS(casimir_forces(sys), DegenerateError);
}

TEST_CASE("two-medium evaluation route") {
  std::mt19937 rng(71);
  SystemConfig sys;
  sys.plate_left = Plate::coated_half_space({}, Material::constant(2.25));
  sys.plate_right = Plate::phase_reflector(0.9, -0.8);
  sys.medium = {Layer{Material::vacuum(), 5e-7},
                Layer{Material::constant(2.25), 5e-7}};
  const CasimirResult a = casimir_forces(sys, {}, EvalRoute::recursive);
  const CasimirResult b = casimir_forces(sys, {}, EvalRoute::two_medium);
  CHECK(gen::rel_dev(a.energy, b.energy) < 1e-12);
  CHECK(gen::rel_dev(a.force_left, b.force_left) < 1e-12);

  const SystemConfig three = checks::asymmetric_three_layer();
  CHECK_THROWS_AS(casimir_forces(three, {}, EvalRoute::two_medium),
                  ValidationError);
}

TEST_CASE("a deliberately asymmetric medium loads the plates unequally") {
  // r_{1/n} != r_{n/1} here; everything else (plates, outer gaps) matches.
  SystemConfig sys;
  sys.plate_left = Plate::phase_reflector(0.8, -0.8);
  sys.plate_right = Plate::phase_reflector(0.8, -0.8);
  sys.medium = {Layer{Material::vacuum(), 5e-7},
                Layer{Material::constant(3.0), 2.5e-7},
                Layer{Material::constant(1.77), 5e-7}};
  const CasimirResult r = casimir_forces(sys);
  CHECK(gen::rel_dev(std::abs(r.force_left), std::abs(r.force_right)) > 1e-3);
}
