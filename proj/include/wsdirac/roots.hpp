#pragma once

#include <cmath>
#include <optional>

namespace wsdirac {

struct BisectionOptions {
  double x_tolerance = 1e-12;         ///< stop once the bracket is this narrow
  double residual_tolerance = 1e-12;  ///< or once |f| drops below this
  int max_iterations = 200;
};

/// Plain bisection on [lo, hi]. Returns nullopt when f(lo) and f(hi) share a
/// sign or either end is not finite.
template <typename F>
std::optional<double> bisect(F&& f, double lo, double hi, const BisectionOptions& opt = {}) {
  double flo = f(lo);
  double fhi = f(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi)) return std::nullopt;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) return std::nullopt;
  for (int it = 0; it < opt.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (!std::isfinite(fm)) return std::nullopt;
    if (std::fabs(fm) <= opt.residual_tolerance || 0.5 * (hi - lo) <= opt.x_tolerance) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
template <typename F>
double golden_minimum(F&& f, double lo, double hi, int iterations = 200) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - invphi * (hi - lo);
  double d = lo + invphi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < iterations && (hi - lo) > 1e-14 * (1.0 + std::fabs(lo)); ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace wsdirac
