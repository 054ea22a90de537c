#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "wsdirac/errors.hpp"
#include "wsdirac/params.hpp"
#include "wsdirac/pekeris.hpp"
#include "wsdirac/roots.hpp"
#include "wsdirac/susyqm.hpp"

namespace wsdirac {

enum class Branch { Upper, Lower };

constexpr const char* to_string(Branch b) noexcept { return b == Branch::Upper ? "upper" : "lower"; }

struct SpectrumDiagnostics {
  bool roots_real = false;
  bool normalizable = false;  ///< A_n(E_selected) < 0
  bool ladder_valid = false;  ///< B_n > 0
};

struct SpectrumResult {
  std::optional<double> e_upper;
  std::optional<double> e_lower;
  double e_binding = 0.0;  ///< E_selected - M
  Branch branch = Branch::Upper;
  SpectrumDiagnostics diagnostics;
  double a_selected = 0.0;  ///< A_n at the selected energy
  double b = 0.0;           ///< ground-state B
  double b_n = 0.0;         ///< B - n/a

  double e_selected() const { return branch == Branch::Upper ? *e_upper : *e_lower; }
};

/// Coefficients of c2 E^2 + c1 E + c0 = 0.
struct Quadratic {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
};

/// Real roots of a quadratic in ascending order, via the cancellation-free
/// form. Empty when the discriminant is negative.
inline std::vector<double> real_roots(const Quadratic& q) {
  const double disc = q.c1 * q.c1 - 4.0 * q.c2 * q.c0;
  if (disc < 0.0 || !std::isfinite(disc)) return {};
  const double t = -0.5 * (q.c1 + std::copysign(std::sqrt(disc), q.c1));
  double r1 = t / q.c2;
  double r2 = t != 0.0 ? q.c0 / t : r1;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

namespace detail {

struct Assembly {
  DerivedCoefficients coeffs;
  PekerisCoefficients pk;
  double b = 0.0;
  double b_n = 0.0;
  double u_intercept = 0.0;  ///< U(E) = u_intercept + u_slope * E
  double u_slope = 0.0;
  double centrifugal_const = 0.0;  ///< gamma c0 / R^2
};

inline Assembly assemble(const PhysicalParams& p, const QuantumState& s) {
  validate(p);
  validate(s);
  Assembly as;
  as.coeffs = derive_coefficients(p, s);
  as.pk = pekeris_coefficients(p.radius, p.surface_thickness);
  const double g = as.coeffs.gamma / (p.radius * p.radius);
  as.b = superpotential_slope(as.coeffs.v + g * as.pk.c2, p.surface_thickness);
  as.b_n = ladder(as.b, s.n, p.surface_thickness);
  if (ladder_singular(as.b_n, p.surface_thickness)) throw SolverError(ErrorKind::LadderSingular, "B_n = 0");
  as.u_slope = -as.coeffs.kappa_slope;
  as.u_intercept = as.coeffs.kappa_const - as.coeffs.kappa_slope * p.mass + as.coeffs.v +
                   g * (as.pk.c1 + as.pk.c2);
  as.centrifugal_const = g * as.pk.c0;
  return as;
}

inline double frak_u(const Assembly& as, double energy) noexcept {
  return as.u_intercept + as.u_slope * energy;
}

}  // namespace detail

/// (E^2 - M^2) - [2 alpha'(E0^2 - M^2)^2 + gamma c0 / R^2 - (U(E)/(2 B_n) - B_n/2)^2].
inline double energy_equation_residual(double energy, const PhysicalParams& p,
                                       const QuantumState& s) {
  const auto as = detail::assemble(p, s);
  const double an = ladder_intercept(detail::frak_u(as, energy), as.b_n);
  return (energy * energy - p.mass * p.mass) -
         (as.coeffs.ml_quartic + as.centrifugal_const - an * an);
}

/// The eigenvalue condition written as a quadratic in E. kappa is affine in
/// E and nothing else depends on it, so U/(2 B_n) - B_n/2 = slope E + icpt.
inline Quadratic energy_quadratic(const PhysicalParams& p, const QuantumState& s) {
  const auto as = detail::assemble(p, s);
  const double slope = as.u_slope / (2.0 * as.b_n);
  const double icpt = as.u_intercept / (2.0 * as.b_n) - as.b_n / 2.0;
  return {1.0 + slope * slope, 2.0 * slope * icpt,
          icpt * icpt - p.mass * p.mass - as.coeffs.ml_quartic - as.centrifugal_const};
}

namespace detail {

inline SpectrumResult finish(const PhysicalParams& p, const Assembly& as,
                             const std::vector<double>& roots) {
  if (roots.empty()) {
    throw SolverError(ErrorKind::NoRealRoot, "eigenvalue equation has complex roots");
  }
  SpectrumResult res;
  res.e_lower = roots[0];
  res.e_upper = roots[1];
  res.branch = Branch::Upper;
  res.e_binding = res.e_selected() - p.mass;
  res.b = as.b;
  res.b_n = as.b_n;
  res.a_selected = ladder_intercept(frak_u(as, res.e_selected()), as.b_n);
  res.diagnostics.roots_real = true;
  res.diagnostics.normalizable = res.a_selected < 0.0;
  res.diagnostics.ladder_valid = as.b_n > 0.0;
  return res;
}

}  // namespace detail

/// Both roots of the eigenvalue condition in closed form; the upper
/// (algebraically larger) root is selected.
inline SpectrumResult solve_energy(const PhysicalParams& p, const QuantumState& s) {
  const auto as = detail::assemble(p, s);
  return detail::finish(p, as, real_roots(energy_quadratic(p, s)));
}

/// Ground-state route: (E - M)(E + M) = 2 alpha'(E0^2 - M^2)^2 + gamma c0/R^2 - A(E)^2
/// with A(E) taken from the closed elimination formula rather than U/(2B) - B/2.
inline SpectrumResult ground_state_energy(const PhysicalParams& p, const QuantumState& s) {
  if (s.n != 0) throw SolverError(ErrorKind::InvalidInput, "ground_state_energy needs n = 0");
  const auto as = detail::assemble(p, s);
  const double a = p.surface_thickness;
  const double g = as.coeffs.gamma / (p.radius * p.radius);
  const double denom = -1.0 / a + 2.0 * std::sqrt(as.coeffs.v + g * as.pk.c2 + 1.0 / (4.0 * a * a));
  // A(E) = slope E + icpt
  const double slope = -as.coeffs.kappa_slope / denom;
  const double icpt =
      (as.coeffs.kappa_const - as.coeffs.kappa_slope * p.mass + g * as.pk.c1) / denom + 0.5 / a;
  const Quadratic q{1.0 + slope * slope, 2.0 * slope * icpt,
                    icpt * icpt - p.mass * p.mass - as.coeffs.ml_quartic - g * as.pk.c0};
  return detail::finish(p, as, real_roots(q));
}

/// Independent root search on the residual over [lo, hi]: the residual is a
/// convex parabola in E, so locate its minimum and bisect on either side.
inline std::vector<double> bracketed_roots(const PhysicalParams& p, const QuantumState& s,
                                           double lo, double hi) {
  auto res = [&](double e) { return energy_equation_residual(e, p, s); };
  const double emin = golden_minimum(res, lo, hi);
  std::vector<double> roots;
  BisectionOptions opt;
  opt.x_tolerance = 1e-14;
  if (auto r = bisect(res, lo, emin, opt)) roots.push_back(*r);
  if (auto r = bisect(res, emin, hi, opt)) roots.push_back(*r);
  return roots;
}

/// Grid of quantum labels and minimal-length parameters to evaluate.
struct SweepGrid {
  std::vector<double> alpha_primes;
  std::vector<int> dims;
  std::vector<int> ells;
  std::vector<int> ns;
};

struct SweepRow {
  double alpha_prime = 0.0;
  QuantumState state;
  std::optional<SpectrumResult> result;
  std::optional<ErrorKind> error;
  std::string message;
};

/// Cartesian product in row-major order (alpha' outermost, then D, l, n).
/// Per-cell failures are recorded on the row; only an empty axis throws.
inline std::vector<SweepRow> sweep(const PhysicalParams& base, const SweepGrid& grid) {
  if (grid.alpha_primes.empty() || grid.dims.empty() || grid.ells.empty() || grid.ns.empty()) {
    throw SolverError(ErrorKind::InvalidInput, "sweep grid axes must be non-empty");
  }
  std::vector<SweepRow> rows;
  rows.reserve(grid.alpha_primes.size() * grid.dims.size() * grid.ells.size() * grid.ns.size());
  for (double ap : grid.alpha_primes) {
    for (int d : grid.dims) {
      for (int l : grid.ells) {
        for (int n : grid.ns) {
          SweepRow row;
          row.alpha_prime = ap;
          row.state = {n, l, d};
          PhysicalParams p = base;
          p.alpha_prime = ap;
          try {
            row.result = solve_energy(p, row.state);
          } catch (const SolverError& e) {
            row.error = e.kind();
            row.message = e.what();
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

struct DepthCalibration {
  double scale = 1.0;
  double deviation = 0.0;  ///< |E_b(scale) - target|
};

/// Picks the depth multiplier whose predicted binding energy for `state`
/// lands closest to `target_binding`. Candidates without a real root are
/// skipped.
inline DepthCalibration calibrate_depth_scale(PhysicalParams p, const QuantumState& state,
                                              double target_binding,
                                              std::initializer_list<double> candidates = {1.0, 2.0, 0.5}) {
  std::optional<DepthCalibration> best;
  for (double scale : candidates) {
    p.depth_scale = scale;
    try {
      const double dev = std::fabs(solve_energy(p, state).e_binding - target_binding);
      if (!best || dev < best->deviation) best = DepthCalibration{scale, dev};
    } catch (const SolverError&) {
    }
  }
  if (!best) throw SolverError(ErrorKind::NoRealRoot, "no depth convention yields a real root");
  return *best;
}

}  // namespace wsdirac
