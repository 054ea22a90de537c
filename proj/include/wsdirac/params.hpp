#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "wsdirac/errors.hpp"

namespace wsdirac {

/// Physical inputs in natural units (hbar = c = 1): energies in fm^-1,
/// lengths in fm, the minimal-length parameter in fm^2.
struct PhysicalParams {
  double mass = 10.0;              ///< M
  double surface_thickness = 0.5;  ///< a
  double radius = 7.0;             ///< R
  double depth = -10.0;            ///< V0; the reference tables use a negative depth
  double e0 = 10.0;                ///< zeroth-order energy E0
  double alpha_prime = 0.0;        ///< GUP parameter, 0 <= alpha' <= 1
  /// Multiplier applied to `depth` wherever it enters the coefficients.
  /// 1 is the calibrated convention; see `calibrate_depth_scale`.
  double depth_scale = 1.0;

  double effective_depth() const noexcept { return depth * depth_scale; }

  bool operator==(const PhysicalParams&) const = default;
};

struct QuantumState {
  int n = 0;
  int ell = 0;
  int dim = 3;

  bool operator==(const QuantumState&) const = default;
};

/// Energy-independent pieces of the radial equation. kappa and the constant
/// term depend on E and are built on demand from these.
struct DerivedCoefficients {
  double gamma = 0.0;        ///< centrifugal constant
  double v = 0.0;            ///< coefficient of the squared Woods-Saxon shape
  double ml_quartic = 0.0;   ///< 2 alpha' (E0^2 - M^2)^2
  double kappa_const = 0.0;  ///< V0 * 4 alpha' (E0^2 - M^2)(E0 + M)
  double kappa_slope = 0.0;  ///< V0, multiplies -(E + M) inside kappa

  bool operator==(const DerivedCoefficients&) const = default;
};

/// Throws InvalidInput on hard violations. Returns soft warnings (currently
/// only the a << R regime check).
inline std::vector<std::string> validate(const PhysicalParams& p) {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(p.mass) || !finite(p.surface_thickness) || !finite(p.radius) || !finite(p.depth) ||
      !finite(p.e0) || !finite(p.alpha_prime) || !finite(p.depth_scale)) {
    throw SolverError(ErrorKind::InvalidInput, "physical parameters must be finite");
  }
  if (p.surface_thickness <= 0.0) {
    throw SolverError(ErrorKind::InvalidInput, "surface thickness a must be positive");
  }
  if (p.radius <= 0.0) {
    throw SolverError(ErrorKind::InvalidInput, "radius R must be positive");
  }
  if (p.alpha_prime < 0.0 || p.alpha_prime > 1.0) {
    throw SolverError(ErrorKind::InvalidInput, "alpha' must lie in [0, 1]");
  }
  std::vector<std::string> warnings;
  if (p.surface_thickness / p.radius > 0.2) {
    warnings.emplace_back("a/R > 0.2: outside the a << R regime of the Woods-Saxon form");
  }
  return warnings;
}

inline void validate(const QuantumState& s) {
  if (s.n < 0) throw SolverError(ErrorKind::InvalidInput, "n must be non-negative");
  if (s.ell < 0) throw SolverError(ErrorKind::InvalidInput, "ell must be non-negative");
  if (s.dim < 1) throw SolverError(ErrorKind::InvalidInput, "dimension must be >= 1");
}

/// [4 l (l + D - 2) + (D - 1)(D - 3)] / 4, numerator in exact integer arithmetic.
inline double gamma(const QuantumState& s) {
  const long long l = s.ell;
  const long long d = s.dim;
  const long long numerator = 4 * l * (l + d - 2) + (d - 1) * (d - 3);
  return static_cast<double>(numerator) / 4.0;
}

inline DerivedCoefficients derive_coefficients(const PhysicalParams& p, const QuantumState& s) {
  const double v0 = p.effective_depth();
  const double split = p.e0 * p.e0 - p.mass * p.mass;
  const double sum = p.e0 + p.mass;
  DerivedCoefficients c;
  c.gamma = gamma(s);
  c.v = 2.0 * p.alpha_prime * v0 * v0 * sum * sum;
  c.ml_quartic = 2.0 * p.alpha_prime * split * split;
  c.kappa_const = v0 * 4.0 * p.alpha_prime * split * sum;
  c.kappa_slope = v0;
  return c;
}

/// kappa(E) = kappa_const - V0 (E + M).
inline double kappa(const DerivedCoefficients& c, double energy, double mass) noexcept {
  return c.kappa_const - c.kappa_slope * (energy + mass);
}

/// The E-dependent constant O(E) = 2 alpha' (E0^2 - M^2)^2 - (E^2 - M^2).
inline double constant_term(const DerivedCoefficients& c, double energy, double mass) noexcept {
  return c.ml_quartic - (energy * energy - mass * mass);
}

}  // namespace wsdirac
