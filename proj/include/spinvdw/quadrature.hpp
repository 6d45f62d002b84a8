#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature of complex spectra over the real
// frequency axis. The domain [-window, window] is split at caller-supplied
// breakpoints (resonances and their Doppler-shifted copies), each interval is
// graded geometrically toward its ends, and the panel with the largest error
// estimate is bisected until the global estimate meets the tolerance.
// Beyond the window the integrand is assumed to decay as C / omega^4 and the
// tail is added analytically.
//
// With `fold` set the integrand is summed as f(x) + f(-x) over [0, window].
// The result is the same integral, but parts of f that are odd in x cancel
// point by point instead of through the panel sums.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <sstream>
#include <utility>
#include <vector>

#include "spinvdw/errors.hpp"

namespace spinvdw {

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  std::vector<double> breakpoints;
  double window = 0.0;
  double grading_width = 0.0;  // width of the panels touching each breakpoint; 0 disables grading
  int max_depth = 30;          // bisection levels below an initial panel
  std::size_t max_evaluations = 20'000'000;
  bool add_tail = true;
  bool fold = false;

  void validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be positive");
    if (!(abs_tol >= 0.0)) throw DomainError("QuadratureSpec: abs_tol must be non-negative");
    if (!(window > 0.0) || !std::isfinite(window)) throw DomainError("QuadratureSpec: window must be positive");
    for (double b : breakpoints) {
      if (!std::isfinite(b) || std::abs(b) >= window) {
        throw DomainError("QuadratureSpec: breakpoints must lie strictly inside the window");
      }
    }
    if (!(grading_width >= 0.0)) throw DomainError("QuadratureSpec: grading_width must be non-negative");
    if (max_depth < 1) throw DomainError("QuadratureSpec: max_depth must be at least 1");
  }
};

struct QuadratureResult {
  std::complex<double> value;  // includes the tail
  double error = 0.0;          // estimate for the windowed part
  std::complex<double> tail;
  std::size_t evaluations = 0;
  int deepest = 0;
};

namespace detail {

struct GaussKronrod15 {
  static constexpr std::array<double, 8> nodes = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> kronrod = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  // Gauss weights for nodes[1], nodes[3], nodes[5], nodes[7].
  static constexpr std::array<double, 4> gauss = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

struct Panel {
  double a;
  double b;
  std::complex<double> value;
  double error;
  int depth;
};

template <class F>
Panel gauss_kronrod_panel(F& f, double a, double b, int depth) {
  using GK = GaussKronrod15;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::complex<double> fc = f(center);
  std::complex<double> kronrod = GK::kronrod[7] * fc;
  std::complex<double> gauss = GK::gauss[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * GK::nodes[j];
    const std::complex<double> sum = std::complex<double>(f(center - dx)) + std::complex<double>(f(center + dx));
    kronrod += GK::kronrod[j] * sum;
    if (j % 2 == 1) gauss += GK::gauss[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half), depth};
}

// Interval endpoints [p, q] refined geometrically toward both ends: widths
// h, h, 2h, 4h, ... from each end until the midpoint is reached.
inline void graded_points(double p, double q, double h, std::vector<double>& out) {
  const double length = q - p;
  if (!(h > 0.0) || length <= 4.0 * h) {
    out.push_back(p);
    return;
  }
  const double mid = p + 0.5 * length;
  std::vector<double> right;
  out.push_back(p);
  for (double w = h; w < 0.5 * length * (1.0 - 1e-12); w *= 2.0) {
    out.push_back(p + w);
    right.push_back(q - w);
  }
  out.push_back(mid);
  out.insert(out.end(), right.rbegin(), right.rend());
}

}  // namespace detail

/// Integrates f over the real line per `spec` (see file comment).
/// Throws ConvergenceError when the tolerance is not met within
/// `max_depth` bisections per panel or `max_evaluations` evaluations.
template <class F>
QuadratureResult integrate_spectrum(F&& f, const QuadratureSpec& spec) {
  spec.validate();
  using detail::Panel;
  const double window = spec.window;

  std::vector<double> nodes = spec.breakpoints;
  if (spec.fold) {
    for (double& b : nodes) b = std::abs(b);
    nodes.push_back(0.0);
  } else {
    nodes.push_back(-window);
  }
  nodes.push_back(window);
  std::sort(nodes.begin(), nodes.end());
  const double merge = 1e-14 * window;
  nodes.erase(std::unique(nodes.begin(), nodes.end(), [&](double x, double y) { return y - x <= merge; }),
              nodes.end());
  nodes.back() = window;

  std::vector<double> mesh;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    detail::graded_points(nodes[i], nodes[i + 1], spec.grading_width, mesh);
  }
  mesh.push_back(window);

  QuadratureResult result;
  std::size_t evaluations = 0;
  auto counted = [&](double x) {
    if (spec.fold) {
      evaluations += 2;
      return std::complex<double>(f(x)) + std::complex<double>(f(-x));
    }
    ++evaluations;
    return std::complex<double>(f(x));
  };

  std::vector<Panel> panels;
  panels.reserve(4 * mesh.size());
  std::complex<double> total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
    panels.push_back(detail::gauss_kronrod_panel(counted, mesh[i], mesh[i + 1], 0));
    total += panels.back().value;
    total_error += panels.back().error;
  }

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry> queue;
  for (std::size_t i = 0; i < panels.size(); ++i) queue.emplace(panels[i].error, i);

  auto tolerance = [&]() { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
  auto resum = [&]() {
    total = 0.0;
    total_error = 0.0;
    for (const Panel& p : panels) {
      total += p.value;
      total_error += p.error;
    }
  };

  std::size_t bisections = 0;
  int deepest = 0;
  while (total_error > tolerance()) {
    if (queue.empty() || evaluations >= spec.max_evaluations) {
      resum();
      if (total_error <= tolerance()) break;
      std::ostringstream msg;
      msg << "integrate_spectrum: no convergence (estimate " << total_error << ", tolerance " << tolerance()
          << ", evaluations " << evaluations << ")";
      throw ConvergenceError(msg.str(), total.real(), total_error);
    }
    const auto [err, index] = queue.top();
    queue.pop();
    const Panel parent = panels[index];
    if (parent.depth >= spec.max_depth) continue;  // frozen; its error stays in the budget

    const double mid = 0.5 * (parent.a + parent.b);
    const Panel left = detail::gauss_kronrod_panel(counted, parent.a, mid, parent.depth + 1);
    const Panel right = detail::gauss_kronrod_panel(counted, mid, parent.b, parent.depth + 1);
    total += left.value + right.value - parent.value;
    total_error += left.error + right.error - parent.error;
    deepest = std::max(deepest, parent.depth + 1);

    panels[index] = left;
    queue.emplace(left.error, index);
    panels.push_back(right);
    queue.emplace(right.error, panels.size() - 1);

    if (++bisections % 4096 == 0) resum();
  }

  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  resum();

  std::complex<double> tail = 0.0;
  if (spec.add_tail) {
    tail = (spec.fold ? counted(window) : counted(window) + counted(-window)) * (window / 3.0);
  }
  result.value = total + tail;
  result.error = total_error;
  result.tail = tail;
  result.evaluations = evaluations;
  result.deepest = deepest;
  return result;
}

}  // namespace spinvdw
