#include "casimir/material.hpp"

#include <cmath>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

void require_finite_nonneg(double v, const char* field) {
  if (!std::isfinite(v) || v < 0.0) {
    throw ValidationError(std::string("material: ") + field +
                          " must be finite and >= 0");
  }
}

void validate_terms(const std::vector<OscillatorTerm>& terms,
                    const char* which) {
  for (const auto& t : terms) {
    require_finite_nonneg(t.wp2, (std::string(which) + ".wp2").c_str());
    require_finite_nonneg(t.w0, (std::string(which) + ".w0").c_str());
    require_finite_nonneg(t.gamma, (std::string(which) + ".gamma").c_str());
  }
}

double oscillator_sum(const std::vector<OscillatorTerm>& terms, double xi) {
  double value = 1.0;
  for (const auto& t : terms) {
    if (xi == 0.0 && t.w0 == 0.0 && t.wp2 > 0.0) {
      throw DomainError(
          "material response has a zero-frequency pole; evaluate at xi > 0");
    }
    value += t.wp2 / (t.w0 * t.w0 + xi * xi + t.gamma * xi);
  }
  return value;
}

void check_xi(double xi) {
  if (!std::isfinite(xi) || xi < 0.0) {
    throw DomainError("material evaluated at invalid xi (need finite, >= 0)");
  }
}

}  // namespace

Material Material::constant(double eps_inf, double mu_inf) {
  if (!std::isfinite(eps_inf) || eps_inf < 1.0) {
    throw ValidationError("material: eps_inf must be finite and >= 1");
  }
  if (!std::isfinite(mu_inf) || mu_inf < 1.0) {
    throw ValidationError("material: mu_inf must be finite and >= 1");
  }
  return Material(Constant{eps_inf, mu_inf});
}

Material Material::oscillator(std::vector<OscillatorTerm> eps_terms,
                              std::vector<OscillatorTerm> mu_terms) {
  validate_terms(eps_terms, "terms");
  validate_terms(mu_terms, "mu_terms");
  return Material(Oscillators{std::move(eps_terms), std::move(mu_terms)});
}

double Material::eps_at(double xi) const {
  check_xi(xi);
  if (const auto* o = std::get_if<Oscillators>(&model_)) {
    return oscillator_sum(o->eps_terms, xi);
  }
  if (const auto* c = std::get_if<Constant>(&model_)) {
    return c->eps_inf;
  }
  return 1.0;
}

double Material::mu_at(double xi) const {
  check_xi(xi);
  if (const auto* o = std::get_if<Oscillators>(&model_)) {
    return oscillator_sum(o->mu_terms, xi);
  }
  if (const auto* c = std::get_if<Constant>(&model_)) {
    return c->mu_inf;
  }
  return 1.0;
}

double Material::index_at(double xi) const {
  return std::sqrt(eps_at(xi) * mu_at(xi));
}

double Material::kappa(double xi, double k) const {
  if (!std::isfinite(k) || k < 0.0) {
    throw DomainError("kappa: k must be finite and >= 0");
  }
  const double n2 = eps_at(xi) * mu_at(xi);
  const double xi_over_c = xi / speed_of_light;
  return std::sqrt(n2 * xi_over_c * xi_over_c + k * k);
}

bool Material::has_zero_frequency_pole() const {
  const auto* o = std::get_if<Oscillators>(&model_);
  if (o == nullptr) return false;
  auto has_pole = [](const std::vector<OscillatorTerm>& ts) {
    for (const auto& t : ts) {
      if (t.w0 == 0.0 && t.wp2 > 0.0) return true;
    }
    return false;
  };
  return has_pole(o->eps_terms) || has_pole(o->mu_terms);
}

}  // namespace casimir
