#pragma once

#include <array>
#include <cmath>

#include "wsdirac/errors.hpp"
#include "wsdirac/params.hpp"
#include "wsdirac/pekeris.hpp"

namespace wsdirac {

/// Coefficients of the Pekeris-approximated radial equation at a fixed E:
///   F'' = (q0 + q1 f + q2 f^2) F,   f = 1 / (1 + exp((r - R)/a)).
struct RadialCoefficients {
  double q0 = 0.0;  ///< O(E) + gamma c0 / R^2
  double q1 = 0.0;  ///< kappa(E) + gamma c1 / R^2
  double q2 = 0.0;  ///< v + gamma c2 / R^2
};

inline RadialCoefficients radial_coefficients(const DerivedCoefficients& c,
                                              const PekerisCoefficients& pk,
                                              const PhysicalParams& p, double energy) noexcept {
  const double g = c.gamma / (p.radius * p.radius);
  return {
      constant_term(c, energy, p.mass) + g * pk.c0,
      kappa(c, energy, p.mass) + g * pk.c1,
      c.v + g * pk.c2,
  };
}

/// Superpotential phi(r) = -(A + B f(r)), with hbar / sqrt(2 mu) set to 1.
struct SusyParameters {
  double A = 0.0;
  double B = 0.0;
  double frak_u = 0.0;  ///< kappa + v + gamma (c1 + c2) / R^2
  double energy = 0.0;  ///< E at which kappa was evaluated
};

/// B from the quadratic B^2 + B/a = q2, positive square-root branch:
///   B = -1/(2a) + sqrt(q2 + 1/(4a^2)),
/// evaluated in the rationalized form q2 / (1/(2a) + sqrt(...)) so that
/// B is exactly zero when q2 is.
inline double superpotential_slope(double q2, double thickness) {
  const double half_inv = 0.5 / thickness;
  const double radicand = q2 + half_inv * half_inv;
  if (!(radicand >= 0.0)) {
    throw SolverError(ErrorKind::DegenerateSuperpotential, "negative radicand in B");
  }
  const double b = q2 / (half_inv + std::sqrt(radicand));
  if (b == 0.0) {
    throw SolverError(ErrorKind::DegenerateSuperpotential,
                      "B = 0: v and gamma*c2 both vanish, the superpotential ansatz collapses");
  }
  return b;
}

/// A_b = U / (2 b) - b / 2 for a (possibly shifted) slope b.
inline double ladder_intercept(double frak_u, double b) noexcept {
  return frak_u / (2.0 * b) - b / 2.0;
}

inline SusyParameters solve_susy_parameters(const DerivedCoefficients& c,
                                            const PekerisCoefficients& pk,
                                            const PhysicalParams& p, double energy) {
  const auto rc = radial_coefficients(c, pk, p, energy);
  SusyParameters sp;
  sp.energy = energy;
  sp.B = superpotential_slope(rc.q2, p.surface_thickness);
  sp.frak_u = kappa(c, energy, p.mass) + c.v + c.gamma * (pk.c1 + pk.c2) / (p.radius * p.radius);
  sp.A = ladder_intercept(sp.frak_u, sp.B);
  return sp;
}

/// The elimination result for A written directly in terms of kappa:
///   A = (kappa + gamma c1 / R^2) / (-1/a + 2 sqrt(q2 + 1/(4a^2))) + 1/(2a).
/// Kept separate from `solve_susy_parameters` as a second route to A.
inline double intercept_closed_form(const DerivedCoefficients& c, const PekerisCoefficients& pk,
                                    const PhysicalParams& p, double energy) {
  const double a = p.surface_thickness;
  const double g = c.gamma / (p.radius * p.radius);
  const double denom = -1.0 / a + 2.0 * std::sqrt(c.v + g * pk.c2 + 1.0 / (4.0 * a * a));
  if (denom == 0.0) {
    throw SolverError(ErrorKind::DegenerateSuperpotential, "closed-form A has zero denominator");
  }
  return (kappa(c, energy, p.mass) + g * pk.c1) / denom + 1.0 / (2.0 * a);
}

/// Residuals of the three matching relations between (A, B) and the radial
/// equation, each scaled by max(1, |lhs|, |rhs|):
///   A^2 = q0,   2AB - B/a = q1,   B^2 + B/a = q2.
/// The first holds only when `sp.energy` is an eigenvalue.
inline std::array<double, 3> matching_residuals(const SusyParameters& sp,
                                                const RadialCoefficients& rc,
                                                double thickness) noexcept {
  auto scaled = [](double lhs, double rhs) {
    const double scale = std::fmax(1.0, std::fmax(std::fabs(lhs), std::fabs(rhs)));
    return std::fabs(lhs - rhs) / scale;
  };
  const double A = sp.A;
  const double B = sp.B;
  return {
      scaled(A * A, rc.q0),
      scaled(2.0 * A * B - B / thickness, rc.q1),
      scaled(B * B + B / thickness, rc.q2),
  };
}

inline double superpotential(const SusyParameters& sp, double r, double thickness,
                             double radius) noexcept {
  return -(sp.A + sp.B * logistic(r, radius, thickness));
}

/// phi'(r) = -B f'(r), analytic.
inline double superpotential_derivative(const SusyParameters& sp, double r, double thickness,
                                        double radius) noexcept {
  return -sp.B * logistic_derivative(r, radius, thickness);
}

struct PartnerPair {
  double minus = 0.0;  ///< V_- = phi^2 - phi'
  double plus = 0.0;   ///< V_+ = phi^2 + phi'
};

inline PartnerPair partner_potentials(const SusyParameters& sp, double r, double thickness,
                                      double radius) noexcept {
  const double f = logistic(r, radius, thickness);
  const double A = sp.A;
  const double B = sp.B;
  const double ba = B / thickness;
  return {
      A * A + (B * B + ba) * f * f + (2.0 * A * B - ba) * f,
      A * A + (B * B - ba) * f * f + (2.0 * A * B + ba) * f,
  };
}

/// True when a ladder slope is zero to within rounding of the 1/a steps.
inline bool ladder_singular(double b_n, double thickness) noexcept {
  return std::fabs(b_n) <= 1e-12 / thickness;
}

/// B_n = B - n/a.
inline double ladder(double b, int n, double thickness) noexcept {
  return b - static_cast<double>(n) / thickness;
}

/// Parameters of the n-th member of the shape-invariant hierarchy: same U,
/// slope B_n, intercept U/(2 B_n) - B_n/2.
inline SusyParameters ladder_parameters(const SusyParameters& sp, int n, double thickness) {
  SusyParameters out = sp;
  out.B = ladder(sp.B, n, thickness);
  if (ladder_singular(out.B, thickness)) throw SolverError(ErrorKind::LadderSingular, "B_n = 0");
  out.A = ladder_intercept(sp.frak_u, out.B);
  return out;
}

/// R(a_i) = -[ A_{B_i}^2 - A_{B_{i-1}}^2 ], with hbar^2 / 2 mu = 1.
inline double remainder(const SusyParameters& sp, int i, double thickness) {
  if (i < 1) throw SolverError(ErrorKind::InvalidInput, "remainder index starts at 1");
  const double bi = ladder(sp.B, i, thickness);
  const double bprev = ladder(sp.B, i - 1, thickness);
  if (ladder_singular(bi, thickness) || ladder_singular(bprev, thickness)) {
    throw SolverError(ErrorKind::LadderSingular, "B - i/a vanishes in remainder");
  }
  const double ai = ladder_intercept(sp.frak_u, bi);
  const double aprev = ladder_intercept(sp.frak_u, bprev);
  return -(ai * ai - aprev * aprev);
}

}  // namespace wsdirac
