#pragma once

#include <array>
#include <cmath>

#include "wsdirac/errors.hpp"

namespace wsdirac {

/// Beyond this |(r - R)/a| the logistic factor is clamped to 0 or 1.
inline constexpr double kLogisticClamp = 700.0;

/// Woods-Saxon shape f(r) = 1 / (1 + exp((r - R)/a)).
inline double logistic(double r, double radius, double thickness) noexcept {
  const double x = (r - radius) / thickness;
  if (x > kLogisticClamp) return 0.0;
  if (x < -kLogisticClamp) return 1.0;
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

/// df/dr = -f (1 - f) / a.
inline double logistic_derivative(double r, double radius, double thickness) noexcept {
  const double f = logistic(r, radius, thickness);
  return -f * (1.0 - f) / thickness;
}

struct PekerisCoefficients {
  double varpi = 0.0;  ///< R / a
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

inline PekerisCoefficients pekeris_coefficients(double radius, double thickness) {
  if (!(radius > 0.0) || !(thickness > 0.0)) {
    throw SolverError(ErrorKind::InvalidInput, "Pekeris coefficients need R > 0 and a > 0");
  }
  PekerisCoefficients pk;
  pk.varpi = radius / thickness;
  const double w = pk.varpi;
  pk.c0 = 1.0 - 4.0 / w + 12.0 / (w * w);
  pk.c1 = 8.0 / w - 48.0 / (w * w);
  pk.c2 = 48.0 / (w * w);
  return pk;
}

/// (gamma / R^2)(c0 + c1 f + c2 f^2), the Woods-Saxon-shaped stand-in for gamma / r^2.
inline double centrifugal_surrogate(const PekerisCoefficients& pk, double gamma, double radius,
                                    double r, double thickness) noexcept {
  const double f = logistic(r, radius, thickness);
  return gamma / (radius * radius) * (pk.c0 + pk.c1 * f + pk.c2 * f * f);
}

/// Taylor coefficients (orders 0, 1, 2) of c0 + c1 f + c2 f^2 in x = (r - R)/R.
///
/// f - 1/2 is odd in x, so f = 1/2 - varpi x / 4 + O(x^3) and
/// f^2 = 1/4 - varpi x / 4 + varpi^2 x^2 / 16 + O(x^3). A correct set of
/// coefficients reproduces 1/(1+x)^2 = 1 - 2x + 3x^2 + ...
inline std::array<double, 3> taylor_match_report(const PekerisCoefficients& pk) noexcept {
  const double w = pk.varpi;
  return {
      pk.c0 + pk.c1 / 2.0 + pk.c2 / 4.0,
      -(w / 4.0) * (pk.c1 + pk.c2),
      pk.c2 * w * w / 16.0,
  };
}

}  // namespace wsdirac
