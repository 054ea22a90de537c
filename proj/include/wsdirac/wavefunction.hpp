#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wsdirac/errors.hpp"
#include "wsdirac/params.hpp"
#include "wsdirac/pekeris.hpp"
#include "wsdirac/susyqm.hpp"

namespace wsdirac {

/// Analytic ground state F(r) = N exp(A r) (1 + exp(-(r - R)/a))^(-a B),
/// the reduced radial function on [0, r_max].
struct RadialWaveFunction {
  double A = 0.0;
  double B = 0.0;
  double a = 0.0;
  double R = 0.0;
  double norm_constant = 1.0;
  double r_max = 0.0;
};

namespace detail {

/// log(1 + exp(y)) without overflow.
inline double softplus(double y) noexcept {
  return y > 0.0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y));
}

}  // namespace detail

/// log of the unnormalized shape, A r - a B log(1 + exp(-(r - R)/a)).
inline double log_shape(double A, double B, double a, double R, double r) noexcept {
  return A * r - a * B * detail::softplus(-(r - R) / a);
}

inline double evaluate(const RadialWaveFunction& wf, double r) {
  if (r < 0.0) throw SolverError(ErrorKind::InvalidInput, "radial coordinate must be >= 0");
  return wf.norm_constant * std::exp(log_shape(wf.A, wf.B, wf.a, wf.R, r));
}

/// F'(r) = (A + B f) F.
inline double first_derivative(const RadialWaveFunction& wf, double r) {
  return (wf.A + wf.B * logistic(r, wf.R, wf.a)) * evaluate(wf, r);
}

/// F''(r) = [(A + B f)^2 + B f'] F.
inline double second_derivative(const RadialWaveFunction& wf, double r) {
  const double f = logistic(r, wf.R, wf.a);
  const double g = wf.A + wf.B * f;
  return (g * g - wf.B * f * (1.0 - f) / wf.a) * evaluate(wf, r);
}

/// Truncation radius past which F^2 has dropped by roughly e^-70 from its
/// value near the surface.
inline double default_truncation_radius(double A, double a, double R) noexcept {
  return R + 20.0 * a + 35.0 / std::fabs(A);
}

namespace detail {

/// Location of the maximum of log_shape on [0, r_max].
inline double log_shape_peak(double A, double B, double a, double R, double r_max) {
  double best = std::max(log_shape(A, B, a, R, 0.0), log_shape(A, B, a, R, r_max));
  // interior stationary point where A + B f = 0
  if (B != 0.0) {
    const double f = -A / B;
    if (f > 0.0 && f < 1.0) {
      const double r = R + a * std::log(1.0 / f - 1.0);
      if (r > 0.0 && r < r_max) best = std::max(best, log_shape(A, B, a, R, r));
    }
  }
  return best;
}

/// Integral of exp(2 (log_shape - shift)) on [0, r_max].
inline double scaled_norm_integral(double A, double B, double a, double R, double r_max,
                                   double shift) {
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [&](double r) { return std::exp(2.0 * (log_shape(A, B, a, R, r) - shift)); };
  // Split at the surface, where the integrand changes character.
  const double mid = std::clamp(R, 0.0, r_max);
  double total = 0.0;
  for (auto [lo, hi] : {std::pair{0.0, mid}, std::pair{mid, r_max}}) {
    if (hi <= lo) continue;
    double err = 0.0;
    const double part = gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 30, 1e-12, &err);
    total += part;
  }
  return total;
}

}  // namespace detail

/// Builds the normalized ground state. r_max defaults to
/// `default_truncation_radius`.
inline RadialWaveFunction normalize(double A, double B, double a, double R,
                                    std::optional<double> r_max = std::nullopt) {
  if (!(A < 0.0)) {
    throw SolverError(ErrorKind::NotNormalizable, "A >= 0: F grows like exp(A r)");
  }
  if (!(a > 0.0) || !(R > 0.0)) {
    throw SolverError(ErrorKind::InvalidInput, "normalize needs a > 0 and R > 0");
  }
  RadialWaveFunction wf{A, B, a, R, 1.0, r_max.value_or(default_truncation_radius(A, a, R))};
  if (!(wf.r_max > 0.0)) throw SolverError(ErrorKind::InvalidInput, "r_max must be positive");
  const double shift = detail::log_shape_peak(A, B, a, R, wf.r_max);
  const double integral = detail::scaled_norm_integral(A, B, a, R, wf.r_max, shift);
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    throw SolverError(ErrorKind::NotNormalizable, "norm integral is not finite and positive");
  }
  wf.norm_constant = std::exp(-shift) / std::sqrt(integral);
  return wf;
}

inline RadialWaveFunction normalize(const RadialWaveFunction& wf) {
  return normalize(wf.A, wf.B, wf.a, wf.R, wf.r_max);
}

/// Integral of F^2 over [0, r_max] for the stored normalization.
inline double norm_integral(const RadialWaveFunction& wf) {
  const double shift = detail::log_shape_peak(wf.A, wf.B, wf.a, wf.R, wf.r_max);
  const double scaled = detail::scaled_norm_integral(wf.A, wf.B, wf.a, wf.R, wf.r_max, shift);
  const double log_n = std::log(wf.norm_constant) + shift;
  return scaled * std::exp(2.0 * log_n);
}

/// F'' - [q0 + q1 f + q2 f^2] F for the Pekeris-approximated radial equation
/// at energy E. Zero for the solved ground state.
inline double ode_residual(const RadialWaveFunction& wf, double energy, const PhysicalParams& p,
                           const QuantumState& s, double r) {
  if (!(r > 0.0)) throw SolverError(ErrorKind::InvalidInput, "ode_residual needs r > 0");
  const auto c = derive_coefficients(p, s);
  const auto pk = pekeris_coefficients(p.radius, p.surface_thickness);
  const auto rc = radial_coefficients(c, pk, p, energy);
  const double f = logistic(r, p.radius, p.surface_thickness);
  return second_derivative(wf, r) - (rc.q0 + rc.q1 * f + rc.q2 * f * f) * evaluate(wf, r);
}

}  // namespace wsdirac
