#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "wsdirac/errors.hpp"
#include "wsdirac/params.hpp"
#include "wsdirac/pekeris.hpp"
#include "wsdirac/roots.hpp"

namespace wsdirac {

/// Numerov shooting on the Pekeris-approximated radial equation. The
/// equation's coefficients depend on E, so every trial energy freezes its own
/// q(r) and the outer search over E carries the nonlinearity.
///
/// Boundary conditions: at r_min the solution follows the locally growing
/// exponential (the Pekeris form is regular at small r, so the interior acts
/// like a constant-coefficient region); at r_max it follows the decaying
/// exponential with rate sqrt(O(E) + gamma c0 / R^2).
struct ShootingConfig {
  double r_min = 0.0;
  double r_max = 0.0;
  int step_count = 20000;
  double match_radius = 0.0;
  double e_lo = 0.0;
  double e_hi = 0.0;
  int scan_points = 400;
  double energy_tolerance = 1e-9;
};

/// r_min = R/100, r_max = R + 40a, matching at R.
inline ShootingConfig default_shooting_config(const PhysicalParams& p, double e_lo, double e_hi) {
  ShootingConfig cfg;
  cfg.r_min = p.radius / 100.0;
  cfg.r_max = p.radius + 40.0 * p.surface_thickness;
  cfg.match_radius = p.radius;
  cfg.e_lo = e_lo;
  cfg.e_hi = e_hi;
  return cfg;
}

inline void validate(const ShootingConfig& cfg) {
  if (!(cfg.r_min > 0.0) || !(cfg.r_min < cfg.match_radius) || !(cfg.match_radius < cfg.r_max)) {
    throw SolverError(ErrorKind::InvalidInput, "need 0 < r_min < match_radius < r_max");
  }
  if (cfg.step_count < 10000) throw SolverError(ErrorKind::InvalidInput, "step_count must be >= 1e4");
  if (!(cfg.e_lo < cfg.e_hi)) throw SolverError(ErrorKind::InvalidInput, "energy bracket is empty");
  if (cfg.scan_points < 2) throw SolverError(ErrorKind::InvalidInput, "scan_points must be >= 2");
}

/// Joined outward/inward solution at one trial energy.
struct ShootingSolution {
  double energy = 0.0;
  double h = 0.0;
  std::vector<double> r;
  std::vector<double> y;  ///< joined at the matching point, unnormalized
  std::size_t match_index = 0;
  double mismatch = 0.0;
  int nodes = 0;
};

namespace detail {

inline constexpr double kRenormThreshold = 1e100;
inline constexpr double kBlowupThreshold = 1e300;

struct FrozenEquation {
  double q0 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double R = 0.0;
  double a = 0.0;

  double operator()(double r) const noexcept {
    const double f = logistic(r, R, a);
    return q0 + q1 * f + q2 * f * f;
  }
  double asymptotic() const noexcept { return q0; }
};

/// Assembles q(r) straight from the physical inputs, without going through
/// the superpotential machinery it is meant to check.
inline FrozenEquation freeze(const PhysicalParams& p, const QuantumState& s, double energy) {
  const auto c = derive_coefficients(p, s);
  const auto pk = pekeris_coefficients(p.radius, p.surface_thickness);
  const double g = c.gamma / (p.radius * p.radius);
  const double m = p.mass;
  FrozenEquation eq;
  eq.q0 = c.ml_quartic - (energy * energy - m * m) + g * pk.c0;
  eq.q1 = c.kappa_const - c.kappa_slope * (energy + m) + g * pk.c1;
  eq.q2 = c.v + g * pk.c2;
  eq.R = p.radius;
  eq.a = p.surface_thickness;
  return eq;
}

/// Numerov recursion over y[first..last] in direction `step` (+1 or -1);
/// y[first] and y[first + step] must be set. Rescales everything already
/// written whenever |y| passes kRenormThreshold.
inline void numerov_sweep(const std::vector<double>& q, std::vector<double>& y, double h,
                          std::ptrdiff_t first, std::ptrdiff_t last, std::ptrdiff_t step) {
  const double h2 = h * h / 12.0;
  for (std::ptrdiff_t i = first + step; i != last; i += step) {
    const auto prev = static_cast<std::size_t>(i - step);
    const auto cur = static_cast<std::size_t>(i);
    const auto next = static_cast<std::size_t>(i + step);
    y[next] = (2.0 * y[cur] * (1.0 + 5.0 * h2 * q[cur]) - y[prev] * (1.0 - h2 * q[prev])) /
              (1.0 - h2 * q[next]);
    if (std::fabs(y[next]) > kRenormThreshold) {
      for (std::ptrdiff_t j = first; j != i + 2 * step; j += step) {
        y[static_cast<std::size_t>(j)] /= kRenormThreshold;
      }
    }
    if (!std::isfinite(y[next]) || std::fabs(y[next]) > kBlowupThreshold) {
      throw SolverError(ErrorKind::IntegrationBlowup, "Numerov solution overflowed");
    }
  }
}

inline int count_sign_changes(const std::vector<double>& y, std::size_t lo, std::size_t hi) {
  int nodes = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    if ((y[i] > 0.0 && y[i + 1] < 0.0) || (y[i] < 0.0 && y[i + 1] > 0.0)) ++nodes;
  }
  return nodes;
}

}  // namespace detail

/// Integrates from both ends at fixed E and joins the two pieces at the
/// matching point. The mismatch is the normalized Wronskian
///   a (y_out[m+1] y_in[m] - y_out[m] y_in[m+1]) / (h |Y_out| |Y_in|),
/// roughly a times the log-derivative jump; it is continuous in E and
/// vanishes exactly at a discrete eigenvalue.
inline ShootingSolution shoot(double energy, const ShootingConfig& cfg, const PhysicalParams& p,
                              const QuantumState& s) {
  validate(cfg);
  const auto eq = detail::freeze(p, s, energy);
  if (!(eq.asymptotic() > 0.0)) {
    throw SolverError(ErrorKind::NotBoundRegime,
                      "O(E) + gamma c0 / R^2 <= 0: oscillatory tail, no decaying solution");
  }
  const auto n = static_cast<std::size_t>(cfg.step_count);
  const double h = (cfg.r_max - cfg.r_min) / static_cast<double>(n);
  ShootingSolution sol;
  sol.energy = energy;
  sol.h = h;
  sol.r.resize(n + 1);
  std::vector<double> q(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    sol.r[i] = cfg.r_min + h * static_cast<double>(i);
    q[i] = eq(sol.r[i]);
  }
  const auto m = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::lround((cfg.match_radius - cfg.r_min) / h)), 2, n - 2);
  sol.match_index = m;

  std::vector<double> out(n + 1, 0.0);
  out[0] = 1.0;
  out[1] = q[0] > 0.0 ? std::exp(std::sqrt(q[0]) * h) : 1.0;
  detail::numerov_sweep(q, out, h, 0, static_cast<std::ptrdiff_t>(m + 1), 1);

  std::vector<double> in(n + 1, 0.0);
  in[n] = 1.0;
  in[n - 1] = std::exp(std::sqrt(eq.asymptotic()) * h);
  detail::numerov_sweep(q, in, h, static_cast<std::ptrdiff_t>(n), static_cast<std::ptrdiff_t>(m) - 1,
                        -1);

  const double norm_out = std::hypot(out[m], out[m + 1]);
  const double norm_in = std::hypot(in[m], in[m + 1]);
  sol.mismatch = p.surface_thickness * (out[m + 1] * in[m] - out[m] * in[m + 1]) /
                 (h * norm_out * norm_in);

  // Join: scale the inward piece so both agree at m.
  sol.y.assign(n + 1, 0.0);
  const double scale = in[m] != 0.0 ? out[m] / in[m] : out[m + 1] / in[m + 1];
  for (std::size_t i = 0; i <= m; ++i) sol.y[i] = out[i];
  for (std::size_t i = m + 1; i <= n; ++i) sol.y[i] = in[i] * scale;
  sol.nodes = detail::count_sign_changes(out, 0, m) + detail::count_sign_changes(in, m, n);
  return sol;
}

inline double shoot_mismatch(double energy, const ShootingConfig& cfg, const PhysicalParams& p,
                             const QuantumState& s) {
  return shoot(energy, cfg, p, s).mismatch;
}

struct OracleEigenvalue {
  double energy = 0.0;
  int nodes = 0;
};

/// Scans the energy bracket, refines every sign change of the mismatch by
/// bisection, and returns up to `count` eigenvalues in ascending energy.
/// Trial energies in the oscillatory-tail regime are skipped.
inline std::vector<OracleEigenvalue> find_eigenvalues(const ShootingConfig& cfg,
                                                      const PhysicalParams& p,
                                                      const QuantumState& s, int count) {
  validate(cfg);
  auto mismatch_or_nan = [&](double e) {
    try {
      return shoot_mismatch(e, cfg, p, s);
    } catch (const SolverError& err) {
      if (err.kind() == ErrorKind::NotBoundRegime) return std::nan("");
      throw;
    }
  };
  const int pts = cfg.scan_points;
  std::vector<double> grid(static_cast<std::size_t>(pts));
  std::vector<double> vals(grid.size());
  for (int i = 0; i < pts; ++i) {
    grid[static_cast<std::size_t>(i)] = cfg.e_lo + (cfg.e_hi - cfg.e_lo) * i / (pts - 1);
    vals[static_cast<std::size_t>(i)] = mismatch_or_nan(grid[static_cast<std::size_t>(i)]);
  }
  BisectionOptions opt;
  opt.x_tolerance = cfg.energy_tolerance;
  opt.residual_tolerance = 0.0;
  std::vector<OracleEigenvalue> found;
  for (std::size_t i = 0; i + 1 < grid.size() && static_cast<int>(found.size()) < count; ++i) {
    if (!std::isfinite(vals[i]) || !std::isfinite(vals[i + 1])) continue;
    if (std::signbit(vals[i]) == std::signbit(vals[i + 1]) && vals[i] != 0.0) continue;
    if (auto e = bisect(mismatch_or_nan, grid[i], grid[i + 1], opt)) {
      found.push_back({*e, shoot(*e, cfg, p, s).nodes});
    }
  }
  if (found.empty()) {
    throw SolverError(ErrorKind::NoEigenvalueInBracket, "no sign change of the mismatch in bracket");
  }
  return found;
}

/// Trapezoid-rule unit normalization of a joined shooting solution.
inline std::vector<double> normalized_samples(const ShootingSolution& sol) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < sol.y.size(); ++i) {
    sum += 0.5 * sol.h * (sol.y[i] * sol.y[i] + sol.y[i + 1] * sol.y[i + 1]);
  }
  std::vector<double> out(sol.y);
  const double inv = 1.0 / std::sqrt(sum);
  for (double& v : out) v *= inv;
  return out;
}

}  // namespace wsdirac
