#pragma once

// Deterministic random inputs shared by the test binaries. Parameter ranges
// keep transfer-matrix products far from overflow (kappa * d <= ~30 per
// layer) while exercising dielectric, magnetic and Drude responses.

#include <random>
#include <vector>

#include "casimir/fresnel.hpp"

namespace gen {

using casimir::Layer;
using casimir::Material;
using casimir::OscillatorTerm;
using casimir::Polarization;
using casimir::SpectralPoint;

inline double log_uniform(std::mt19937& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline Material random_material(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (kind(rng)) {
    case 0:
      return Material::vacuum();
    case 1:
      return Material::constant(1.0 + 4.0 * u(rng), 1.0 + u(rng));
    case 2: {  // Drude
      return Material::oscillator(
          {OscillatorTerm{log_uniform(rng, 1e30, 5e31), 0.0,
                          log_uniform(rng, 1e12, 1e14)}});
    }
    default: {  // one or two Lorentz poles
      std::vector<OscillatorTerm> terms = {
          OscillatorTerm{log_uniform(rng, 1e30, 5e31),
                         log_uniform(rng, 1e15, 3e16),
                         log_uniform(rng, 1e12, 1e15)}};
      if (u(rng) < 0.5) {
        terms.push_back(OscillatorTerm{log_uniform(rng, 1e29, 1e31),
                                       log_uniform(rng, 1e14, 1e16), 0.0});
      }
      return Material::oscillator(std::move(terms));
    }
  }
}

inline SpectralPoint random_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {log_uniform(rng, 1e13, 1e16), log_uniform(rng, 1e4, 1e7),
          u(rng) < 0.5 ? Polarization::p : Polarization::s};
}

inline std::vector<Layer> random_layers(std::mt19937& rng,
                                        std::size_t max_layers,
                                        double max_d = 2e-7) {
  std::uniform_int_distribution<std::size_t> count(0, max_layers);
  std::uniform_real_distribution<double> thickness(0.0, max_d);
  std::vector<Layer> layers(count(rng));
  for (auto& layer : layers) {
    layer.material = random_material(rng);
    layer.d = thickness(rng);
  }
  return layers;
}

inline double rel_dev(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace gen
