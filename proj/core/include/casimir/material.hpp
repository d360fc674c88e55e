#pragma once

#include <vector>
#include <variant>

namespace casimir {

/// Field polarization: p (TM) or s (TE).
enum class Polarization { p, s };

inline const char* to_string(Polarization q) {
  return q == Polarization::p ? "p" : "s";
}

/// One point of the fluctuation spectrum: imaginary frequency xi (rad/s),
/// transverse wavenumber k (1/m), polarization q.
struct SpectralPoint {
  double xi = 0.0;
  double k = 0.0;
  Polarization q = Polarization::p;
};

/// One oscillator of a Drude/Lorentz sum. w0 = 0 gives a Drude (free-carrier)
/// term whose response diverges as xi -> 0+.
struct OscillatorTerm {
  double wp2 = 0.0;    ///< squared plasma frequency, (rad/s)^2
  double w0 = 0.0;     ///< resonance frequency, rad/s
  double gamma = 0.0;  ///< damping rate, rad/s
};

/// Homogeneous magnetodielectric medium evaluated on the imaginary frequency
/// axis. Admitted models have real response >= 1 for every xi > 0, which keeps
/// perpendicular wave vectors and Fresnel coefficients real.
class Material {
 public:
  /// Default-constructed material is vacuum.
  Material() : model_(Vacuum{}) {}

  static Material vacuum() { return Material(); }

  /// Frequency-independent response; requires eps_inf >= 1 and mu_inf >= 1.
  static Material constant(double eps_inf, double mu_inf = 1.0);

  /// Oscillator sums for the permittivity and (optionally) the permeability:
  ///   eps(i xi) = 1 + sum wp2 / (w0^2 + xi^2 + gamma xi)
  /// and the same form for mu with mu_terms.
  static Material oscillator(std::vector<OscillatorTerm> eps_terms,
                             std::vector<OscillatorTerm> mu_terms = {});

  /// Relative permittivity at imaginary frequency xi (rad/s, >= 0).
  /// Throws DomainError for xi = 0 when a zero-frequency pole is present.
  double eps_at(double xi) const;

  /// Relative permeability at imaginary frequency xi.
  double mu_at(double xi) const;

  /// Refraction index n(i xi) = sqrt(eps mu).
  double index_at(double xi) const;

  /// Perpendicular wave vector kappa = sqrt(eps mu xi^2/c^2 + k^2) (1/m).
  double kappa(double xi, double k) const;

  /// True if any oscillator term has w0 = 0 (response diverges at xi = 0).
  bool has_zero_frequency_pole() const;

  bool is_vacuum() const { return std::holds_alternative<Vacuum>(model_); }

 private:
  struct Vacuum {};
  struct Constant {
    double eps_inf;
    double mu_inf;
  };
  struct Oscillators {
    std::vector<OscillatorTerm> eps_terms;
    std::vector<OscillatorTerm> mu_terms;
  };

  explicit Material(std::variant<Vacuum, Constant, Oscillators> m)
      : model_(std::move(m)) {}

  std::variant<Vacuum, Constant, Oscillators> model_;
};

}  // namespace casimir
