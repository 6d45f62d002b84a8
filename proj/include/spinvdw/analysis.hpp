#pragma once

// One-dimensional helpers for locating features of force curves.

#include <cmath>
#include <cstddef>
#include <vector>

#include "spinvdw/errors.hpp"

namespace spinvdw {

/// Evenly spaced points, endpoints included.
inline std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {start};
  std::vector<double> v(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) v[i] = start + step * static_cast<double>(i);
  v.back() = stop;
  return v;
}

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <class F>
Extremum golden_maximum(F&& f, double lo, double hi, double x_tol) {
  if (!(hi > lo) || !(x_tol > 0.0)) throw DomainError("golden_maximum: need lo < hi and x_tol > 0");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > x_tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Extremum{c, fc} : Extremum{d, fd};
}

/// Maximum of f on [lo, hi]: the best of `samples` evenly spaced points,
/// refined by golden-section search between its neighbours.
template <class F>
Extremum resolved_maximum(F&& f, double lo, double hi, std::size_t samples, double x_tol) {
  if (samples < 3) throw DomainError("resolved_maximum: need at least 3 samples");
  const auto xs = linspace(lo, hi, samples);
  std::size_t best = 0;
  double best_value = f(xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double v = f(xs[i]);
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  const double a = xs[best == 0 ? 0 : best - 1];
  const double b = xs[best + 1 == xs.size() ? best : best + 1];
  const Extremum refined = golden_maximum(f, a, b, x_tol);
  return refined.value >= best_value ? refined : Extremum{xs[best], best_value};
}

/// Bisection for a sign change of f on [lo, hi]; f(lo) and f(hi) must differ in sign.
template <class F>
double bisect_root(F&& f, double lo, double hi, double x_tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw DomainError("bisect_root: no sign change on the bracket");
  while (hi - lo > x_tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Indices of strict interior local maxima of ys.
inline std::vector<std::size_t> local_maxima(const std::vector<double>& ys) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
    if (ys[i] > ys[i - 1] && ys[i] >= ys[i + 1]) out.push_back(i);
  }
  return out;
}

}  // namespace spinvdw
