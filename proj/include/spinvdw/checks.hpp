#pragma once

// The acceptance criteria of the library as runnable checks. Each check
// computes its quantities from scratch and reports one pass/fail result.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "spinvdw/analysis.hpp"
#include "spinvdw/baseline.hpp"
#include "spinvdw/configurations.hpp"
#include "spinvdw/oracle.hpp"
#include "spinvdw/response.hpp"
#include "spinvdw/rotation.hpp"
#include "spinvdw/spectral.hpp"
#include "spinvdw/sweep.hpp"

namespace spinvdw {

struct CheckResult {
  int criterion = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int criterion_count = 11;

namespace checks {

using clock = std::chrono::steady_clock;

inline double seconds_since(clock::time_point t0) {
  return std::chrono::duration<double>(clock::now() - t0).count();
}

inline double rel_diff(double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); }

inline const std::vector<ArrangementKind>& canonical_kinds() {
  static const std::vector<ArrangementKind> k = {ArrangementKind::RR, ArrangementKind::UU, ArrangementKind::UR,
                                                 ArrangementKind::UO};
  return k;
}

inline std::string name(ArrangementKind k) { return std::string(arrangement_name(k)); }

inline PairContext bst_pair(double temperature) { return reference_pair(temperature); }

inline double omega0() { return resonance_frequency(MaterialModel::bst()); }

inline double gamma_over_omega0() { return MaterialModel::bst().gamma0 / omega0(); }

// 1. Damped quadrature against the undamped closed form.
inline CheckResult oracle_equivalence() {
  CheckResult r{1, "oracle equivalence (gamma0 x 1e-3, T = 0)", false, {}, 0.0};
  const auto t0 = clock::now();
  MaterialModel m = MaterialModel::bst();
  m.gamma0 *= 1e-3;
  const auto ctx = PairContext::identical(60e-9, m, 0.0, 180e-9);
  const double w0 = resonance_frequency(m);
  const auto lorentz = LorentzPair::from_spheres(ctx.a, ctx.b, ctx.separation);
  const double e0 = aux_energy(ctx, 0.0);
  double worst = 0.0;
  std::ostringstream d;
  for (double s : {0.0, 0.5, 1.5, 3.0}) {
    const double ratio = aux_energy(ctx, s * w0) / e0;
    const double expected = ratio_aux(lorentz, s * w0);
    const double dev = std::abs(ratio / expected - 1.0);
    worst = std::max(worst, dev);
    d << "W=" << s << "w0: " << ratio << " vs " << expected << "; ";
  }
  r.seconds = seconds_since(t0);
  r.passed = worst <= 0.01 && r.seconds < 5.0;
  d << "max rel dev " << worst << " (tol 1e-2), " << r.seconds << " s (limit 5 s)";
  r.detail = d.str();
  return r;
}

// 2. All arrangements at rest give 12 E(0).
inline CheckResult zero_rotation() {
  CheckResult r{2, "zero-rotation identity E0 = 12 E(0)", false, {}, 0.0};
  const auto t0 = clock::now();
  std::vector<double> values;
  std::ostringstream d;
  double reference = 0.0;
  for (auto k : canonical_kinds()) {
    const PairContext ctx = bst_pair(300.0);
    const Interaction fresh(ctx);
    const double e = fresh.energy(Arrangement::canonical(k), 0.0, 0.0);
    reference = 12.0 * fresh.aux(0.0);
    values.push_back(e);
    d << name(k) << "=" << e << " J; ";
  }
  double spread = 0.0;
  for (double v : values) spread = std::max(spread, rel_diff(v, reference));
  r.seconds = seconds_since(t0);
  r.passed = spread <= 1e-10;
  d << "12E(0)=" << reference << " J, max rel spread " << spread << " (tol 1e-10)";
  r.detail = d.str();
  return r;
}

// 3. rr depends only on the relative spin.
inline CheckResult shift_invariance() {
  CheckResult r{3, "rr shift invariance (BST, 300 K)", false, {}, 0.0};
  const auto t0 = clock::now();
  const Interaction I(bst_pair(300.0));
  const auto rr = Arrangement::canonical(ArrangementKind::RR);
  const double w0 = omega0();
  double worst = 0.0;
  for (auto [a, b] : {std::pair{1.5, 0.0}, std::pair{2.5, 0.7}, std::pair{-0.8, 1.1}}) {
    const double base = I.energy(rr, a * w0, b * w0);
    for (double delta : {0.3, 1.7}) {
      worst = std::max(worst, rel_diff(I.energy(rr, (a + delta) * w0, (b + delta) * w0), base));
    }
  }
  r.seconds = seconds_since(t0);
  r.passed = worst < 1e-9;
  std::ostringstream d;
  d << "max rel deviation " << worst << " (tol 1e-9) over 3 base points x delta in {0.3, 1.7} w0";
  r.detail = d.str();
  return r;
}

// 4. E(-WA, -WB) = E(WA, WB): closed assemblies with E(.) evaluated at signed
// arguments (no cache), and the general tensor contraction.
inline CheckResult parity() {
  CheckResult r{4, "parity E(-WA,-WB) = E(WA,WB)", false, {}, 0.0};
  const auto t0 = clock::now();
  const PairContext ctx = bst_pair(300.0);
  const Interaction I(ctx);
  const double w0 = omega0();
  auto aux = [&](double w) { return aux_energy(ctx, w); };
  double worst_closed = 0.0;
  double worst_general = 0.0;
  for (auto k : canonical_kinds()) {
    const auto general = Arrangement::canonical(k).as_general();
    for (auto [a, b] : {std::pair{1.3, -0.4}, std::pair{2.1, 0.9}}) {
      worst_closed = std::max(worst_closed, rel_diff(assemble_energy(k, aux, a * w0, b * w0),
                                                     assemble_energy(k, aux, -a * w0, -b * w0)));
      worst_general = std::max(worst_general,
                               rel_diff(I.energy(general, a * w0, b * w0), I.energy(general, -a * w0, -b * w0)));
    }
  }
  r.seconds = seconds_since(t0);
  r.passed = worst_closed <= 1e-9 && worst_general <= 1e-9;
  std::ostringstream d;
  d << "rr, uu, ur, uo at (1.3,-0.4) and (2.1,0.9) w0: max rel deviation closed " << worst_closed << ", tensor "
    << worst_general << " (tol 1e-9)";
  r.detail = d.str();
  return r;
}

// 5. Tensor contraction against the closed assemblies on a 5x5 grid.
inline CheckResult general_contraction() {
  CheckResult r{5, "general contraction vs closed assemblies (5x5 grid)", false, {}, 0.0};
  const auto t0 = clock::now();
  const Interaction I(bst_pair(300.0));
  const double w0 = omega0();
  const auto grid = linspace(-3.0, 3.0, 5);
  double worst = 0.0;
  std::ostringstream d;
  for (auto k : canonical_kinds()) {
    const auto arrangement = Arrangement::canonical(k);
    double worst_k = 0.0;
    for (double a : grid) {
      for (double b : grid) {
        const double closed = I.energy(arrangement, a * w0, b * w0);
        const double contracted = I.energy(arrangement.as_general(), a * w0, b * w0);
        worst_k = std::max(worst_k, rel_diff(closed, contracted));
      }
    }
    worst = std::max(worst, worst_k);
    d << name(k) << " " << worst_k << "; ";
  }
  r.seconds = seconds_since(t0);
  r.passed = worst <= 1e-6 && r.seconds < 120.0;
  d << "max rel dev " << worst << " (tol 1e-6), " << r.seconds << " s (limit 120 s)";
  r.detail = d.str();
  return r;
}

// 6. High-spin limits of the undamped closed forms.
inline CheckResult needle_limits() {
  CheckResult r{6, "needle limits (undamped, WB = 0, WA = 50 w0)", false, {}, 0.0};
  const auto t0 = clock::now();
  const double w0 = omega0();
  const double rr = ratio_rr(w0, 50.0 * w0);
  const double uu = ratio_uu(w0, 50.0 * w0, 0.0);
  const double dev_rr = std::abs(rr - 2.0 / 3.0);
  const double dev_uu = std::abs(uu - 1.0 / 6.0);
  r.seconds = seconds_since(t0);
  r.passed = dev_rr <= 1e-3 && dev_uu <= 1e-3;
  std::ostringstream d;
  d.precision(8);
  d << "E_rr/E0=" << rr << " (|dev from 2/3|=" << dev_rr << (dev_rr <= 1e-3 ? " ok" : " FAIL") << "); E_uu/E0=" << uu
    << " (|dev from 1/6|=" << dev_uu << (dev_uu <= 1e-3 ? " ok" : " FAIL") << "); tol 1e-3";
  r.detail = d.str();
  return r;
}

// 7. Shape of the rr force change at 300 K and 1500 K.
inline CheckResult fig1_reproduction() {
  CheckResult r{7, "rr force change: peak, crossover at 2 w0, saturation, low-spin repulsion", false, {}, 0.0};
  const auto t0 = clock::now();
  const auto rr = Arrangement::canonical(ArrangementKind::RR);
  const double w0 = omega0();
  const double g = gamma_over_omega0();
  bool all = true;
  std::ostringstream d;
  d.precision(4);
  for (double T : {300.0, 1500.0}) {
    const Interaction I(bst_pair(T));
    auto df = [&](double x) { return I.delta_force(rr, x * w0, 0.0) / constants::femto; };
    const auto xs = linspace(0.0, 4.0, 4001);
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (double x : xs) ys.push_back(df(x));
    const double peak = *std::max_element(ys.begin(), ys.end());
    std::size_t peaks = 0;
    for (auto i : local_maxima(ys)) peaks += ys[i] > 0.25 * peak ? 1 : 0;

    // Upward sign change closest to 2 w0.
    double root = std::nan("");
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (ys[i] < 0.0 && ys[i + 1] >= 0.0 && (std::isnan(root) || std::abs(xs[i] - 2.0) < std::abs(root - 2.0))) {
        root = xs[i];
      }
    }
    bool crossover = false;
    if (!std::isnan(root)) {
      root = bisect_root(df, root, root + (xs[1] - xs[0]), 1e-10);
      crossover = std::abs(root - 2.0) <= 2.0 * g;
    }

    const double d16 = df(16.0), d32 = df(32.0), d64 = df(64.0);
    const bool saturates = std::abs(d64 - d32) <= 0.05 * std::abs(d64) && std::abs(d64) > 1e-3 * peak;

    double low = -1e300;
    for (std::size_t i = 1; i < xs.size() && xs[i] < 1.5; ++i) low = std::max(low, ys[i]);
    const bool low_repulsive = low > 0.0 && low < 0.25 * peak;

    const bool ok = peaks == 1 && crossover && saturates && (T < 1000.0 || low_repulsive);
    all = all && ok;
    d << "T=" << T << "K: peaks=" << peaks << " max=" << peak << " fN, crossover at " << root
      << " w0 (tol 2g=" << 2.0 * g << "), dF(16,32,64 w0)=" << d16 << "," << d32 << "," << d64
      << " fN, max dF below 1.5 w0=" << low << " fN" << (ok ? " ok" : " FAIL") << "; ";
  }
  r.seconds = seconds_since(t0);
  r.passed = all;
  r.detail = d.str();
  return r;
}

// 8. uu force change at 1500 K: magnitude, peak positions, intensity exchange, rho = 1.
inline CheckResult fig2_reproduction() {
  CheckResult r{8, "uu force change at 1500 K (magnitude, peaks, exchange, rho=1)", false, {}, 0.0};
  const auto t0 = clock::now();
  std::ostringstream d;
  d.precision(4);

  // Wall time of the three 200-point preset sweeps.
  const auto ts = clock::now();
  double sampled_max = -1e300;
  for (const char* p : {"fig2a", "fig2b", "fig2c"}) {
    for (const auto& row : run_plan(preset(p)).rows) sampled_max = std::max(sampled_max, row.delta_force_fN);
  }
  const double sweep_seconds = seconds_since(ts);

  PairContext ctx = bst_pair(1500.0);
  ctx.direction = Eigen::Vector3d::UnitX();
  const Interaction I(ctx);
  const auto uu = Arrangement::canonical(ArrangementKind::UU);
  const double w0 = omega0();
  const double g = gamma_over_omega0();

  struct Peak {
    double rho, predicted, x, value;
  };
  std::vector<Peak> found;
  for (double rho : {0.5, -0.5, 0.9, -0.9, 1.0, -1.0}) {
    auto df = [&](double x) { return I.delta_force(uu, x * w0, rho * x * w0) / constants::femto; };
    for (double s : {1.0 - rho, 1.0 + rho}) {
      if (s <= 0.0 || 2.0 / s > 5.0) continue;
      const double xp = 2.0 / s;
      const double half = 15.0 * g / s;
      const auto m = resolved_maximum(df, xp - half, xp + half, 301, 1e-9);
      found.push_back({rho, xp, m.x, m.value});
    }
  }
  double resolved_max = -1e300;
  for (const auto& p : found) resolved_max = std::max(resolved_max, p.value);
  const bool magnitude = resolved_max >= 6.0 && resolved_max <= 11.0;

  auto peak_at = [&](double rho, double xp) {
    for (const auto& p : found) {
      if (p.rho == rho && std::abs(p.predicted - xp) < 1e-12) return p;
    }
    return Peak{rho, xp, std::nan(""), std::nan("")};
  };
  bool positions = true;
  for (double rho : {0.5, -0.5}) {
    for (double xp : {4.0 / 3.0, 4.0}) {
      const auto p = peak_at(rho, xp);
      positions = positions && std::abs(p.x - xp) <= 3.0 * g;
      d << "rho=" << rho << " peak " << p.value << " fN at " << p.x << " (pred " << xp << "); ";
    }
  }
  const bool exchange = peak_at(0.5, 4.0 / 3.0).value > peak_at(0.5, 4.0).value &&
                        peak_at(-0.5, 4.0).value > peak_at(-0.5, 4.0 / 3.0).value;

  bool single = true;
  for (double rho : {1.0, -1.0}) {
    auto df = [&](double x) { return I.delta_force(uu, x * w0, rho * x * w0) / constants::femto; };
    const auto xs = linspace(0.001, 5.0, 5000);
    std::vector<double> ys;
    for (double x : xs) ys.push_back(df(x));
    const double top = *std::max_element(ys.begin(), ys.end());
    std::size_t count = 0;
    for (auto i : local_maxima(ys)) count += ys[i] > 0.25 * top ? 1 : 0;
    const auto p = peak_at(rho, 1.0);
    const bool ok = count == 1 && std::abs(p.x - 1.0) <= 2.0 * g;
    single = single && ok;
    d << "rho=" << rho << ": " << count << " peak(s), max " << p.value << " fN at " << p.x << " w0; ";
  }

  r.seconds = seconds_since(t0);
  const bool fast = sweep_seconds < 300.0;
  r.passed = magnitude && positions && exchange && single && fast;
  d << "max repulsive dF (resolved) " << resolved_max << " fN" << (magnitude ? " ok" : " FAIL")
    << " [target 6..11], 200-point grid max " << sampled_max << " fN; positions" << (positions ? " ok" : " FAIL")
    << "; exchange" << (exchange ? " ok" : " FAIL") << "; rho=1 single peak" << (single ? " ok" : " FAIL")
    << "; preset sweeps " << sweep_seconds << " s (limit 300 s)";
  r.detail = d.str();
  return r;
}

// 9. Hamaker static force.
inline CheckResult static_baseline() {
  CheckResult r{9, "static baseline |F| = 4.06 fN (H = 5e-20 J)", false, {}, 0.0};
  const auto t0 = clock::now();
  const double f = static_force_estimate(5e-20, 60e-9, 180e-9) / constants::femto;
  r.seconds = seconds_since(t0);
  r.passed = std::abs(std::abs(f) - 4.06) <= 0.1 && f < 0.0;
  std::ostringstream d;
  d << "F = " << f << " fN (target |F| = 4.06 +- 0.1, attractive)";
  r.detail = d.str();
  return r;
}

// 10. Direct Doppler transform of eta against the nonequilibrium FDT.
inline CheckResult fdt_consistency() {
  CheckResult r{10, "nonequilibrium FDT consistency", false, {}, 0.0};
  const auto t0 = clock::now();
  SpinningSphere sphere;
  const double w0 = omega0();
  double worst = 0.0;
  std::size_t points = 0;
  for (double T : {0.0, 300.0, 1500.0}) {
    const double thermal = thermal_frequency(T);
    for (double s : {0.0, 0.5, 1.0, 2.5}) {
      const double spin = s * w0;
      auto alpha_lab = [&](double w) {
        return spin_transform([&](double u) { return polarizability(sphere, u); }, spin, w,
                              ResponseKind::Polarizability);
      };
      for (double x : linspace(-5.0, 5.0, 200)) {
        const double w = x * w0;
        const auto direct =
            spin_transform([&](double u) { return hadamard(sphere, u, T); }, spin, w, ResponseKind::Hadamard);
        const auto built = noneq_fdt_hadamard(alpha_lab, spin, w, thermal);
        const double scale = direct.entries.cwiseAbs().maxCoeff();
        const double err = (direct.entries - built.entries).cwiseAbs().maxCoeff();
        worst = std::max(worst, scale > 0.0 ? err / scale : err);
        ++points;
      }
    }
  }
  r.seconds = seconds_since(t0);
  r.passed = worst <= 1e-12;
  std::ostringstream d;
  d << points << " (w, W, T) points, max rel tensor error " << worst << " (tol 1e-12)";
  r.detail = d.str();
  return r;
}

// 11. The naive equilibrium FDT breaks the relative-spin dependence.
inline CheckResult naive_fdt_contrast() {
  CheckResult r{11, "naive FDT breaks shift invariance, nonequilibrium rr keeps it", false, {}, 0.0};
  const auto t0 = clock::now();
  const PairContext ctx = bst_pair(0.0);
  const double w0 = omega0();
  const double naive = rel_diff(naive_fdt_energy_rr(ctx, 2.0 * w0, 0.5 * w0), naive_fdt_energy_rr(ctx, 1.5 * w0, 0.0));
  const Interaction I(ctx);
  const auto rr = Arrangement::canonical(ArrangementKind::RR);
  const double noneq = rel_diff(I.energy(rr, 2.0 * w0, 0.5 * w0), I.energy(rr, 1.5 * w0, 0.0));
  r.seconds = seconds_since(t0);
  r.passed = naive > 1e-3 && noneq < 1e-9;
  std::ostringstream d;
  d << "T=0, (WA,WB)=(1.5,0) w0 shifted by 0.5 w0: naive rel change " << naive << " (need > 1e-3), nonequilibrium "
    << noneq << " (need < 1e-9)";
  r.detail = d.str();
  return r;
}

}  // namespace checks

inline CheckResult run_criterion(int n) {
  switch (n) {
    case 1: return checks::oracle_equivalence();
    case 2: return checks::zero_rotation();
    case 3: return checks::shift_invariance();
    case 4: return checks::parity();
    case 5: return checks::general_contraction();
    case 6: return checks::needle_limits();
    case 7: return checks::fig1_reproduction();
    case 8: return checks::fig2_reproduction();
    case 9: return checks::static_baseline();
    case 10: return checks::fdt_consistency();
    case 11: return checks::naive_fdt_contrast();
    default: break;
  }
  throw DomainError("run_criterion: criteria are numbered 1 to " + std::to_string(criterion_count));
}

/// Runs the check and converts exceptions into a failed result.
inline CheckResult run_criterion_guarded(int n) {
  try {
    return run_criterion(n);
  } catch (const std::exception& e) {
    CheckResult r;
    r.criterion = n;
    r.title = "criterion " + std::to_string(n);
    r.detail = std::string("exception: ") + e.what();
    return r;
  }
}

inline std::string format_check(const CheckResult& r) {
  std::ostringstream s;
  s << (r.passed ? "PASS" : "FAIL") << " criterion " << r.criterion << ": " << r.title << " | " << r.detail;
  return s.str();
}

}  // namespace spinvdw
