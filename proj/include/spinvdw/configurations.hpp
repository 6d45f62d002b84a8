#pragma once

// Interaction energies for the canonical spin arrangements, assembled from the
// auxiliary function, plus forces and rotation-induced force changes.
//
//   rr  both axes along the separation          4[E(WA-WB) + 2E(0)]
//   uu  both axes perpendicular, parallel       E(WA-WB) + 9E(WA+WB) + 2E(0)
//   ur  A perpendicular, B along the separation 8E(WA) + 2E(WB) + E(WA-WB) + E(WA+WB)
//   uo  mutually perpendicular, both transverse 2E(WA) + 2E(WB) + 4E(WA-WB) + 4E(WA+WB)
//
// with E(.) the auxiliary function. General axes go through general_energy.

#include <cmath>
#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include <Eigen/Core>

#include "spinvdw/errors.hpp"
#include "spinvdw/spectral.hpp"

namespace spinvdw {

enum class ArrangementKind { RR, UU, UR, UO, General };

struct Arrangement {
  ArrangementKind kind = ArrangementKind::RR;
  Eigen::Vector3d axis_a = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d axis_b = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d rhat = Eigen::Vector3d::UnitZ();

  static Arrangement canonical(ArrangementKind kind) {
    const Eigen::Vector3d x = Eigen::Vector3d::UnitX();
    const Eigen::Vector3d y = Eigen::Vector3d::UnitY();
    const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();
    switch (kind) {
      case ArrangementKind::RR: return {kind, z, z, z};
      case ArrangementKind::UU: return {kind, z, z, x};
      case ArrangementKind::UR: return {kind, z, x, x};
      case ArrangementKind::UO: return {kind, z, y, x};
      case ArrangementKind::General: break;
    }
    throw DomainError("Arrangement::canonical: General has no canonical axes");
  }

  static Arrangement general(const Eigen::Vector3d& axis_a, const Eigen::Vector3d& axis_b,
                             const Eigen::Vector3d& rhat) {
    Arrangement a{ArrangementKind::General, axis_a, axis_b, rhat};
    a.validate();
    return a;
  }

  /// Same axes, relabelled as General (forces the tensor-contraction path).
  Arrangement as_general() const { return {ArrangementKind::General, axis_a, axis_b, rhat}; }

  void validate() const {
    for (const auto* v : {&axis_a, &axis_b, &rhat}) {
      if (std::abs(v->norm() - 1.0) > 1e-12) throw DomainError("Arrangement: axes must be unit vectors");
    }
  }

  friend bool operator==(const Arrangement&, const Arrangement&) = default;
};

inline std::string_view arrangement_name(ArrangementKind kind) {
  switch (kind) {
    case ArrangementKind::RR: return "rr";
    case ArrangementKind::UU: return "uu";
    case ArrangementKind::UR: return "ur";
    case ArrangementKind::UO: return "uo";
    case ArrangementKind::General: return "general";
  }
  return "?";
}

inline ArrangementKind parse_arrangement_kind(std::string_view name) {
  for (auto k : {ArrangementKind::RR, ArrangementKind::UU, ArrangementKind::UR, ArrangementKind::UO,
                 ArrangementKind::General}) {
    if (arrangement_name(k) == name) return k;
  }
  throw DomainError("unknown arrangement '" + std::string(name) + "' (expected rr, uu, ur, uo or general)");
}

/// Canonical-arrangement energy from any auxiliary-function callable `e`.
template <class Aux>
double assemble_energy(ArrangementKind kind, Aux&& e, double spin_a, double spin_b) {
  switch (kind) {
    case ArrangementKind::RR: return 4.0 * (e(spin_a - spin_b) + 2.0 * e(0.0));
    case ArrangementKind::UU: return e(spin_a - spin_b) + 9.0 * e(spin_a + spin_b) + 2.0 * e(0.0);
    case ArrangementKind::UR: return 8.0 * e(spin_a) + 2.0 * e(spin_b) + e(spin_a - spin_b) + e(spin_a + spin_b);
    case ArrangementKind::UO:
      return 2.0 * e(spin_a) + 2.0 * e(spin_b) + 4.0 * e(spin_a - spin_b) + 4.0 * e(spin_a + spin_b);
    case ArrangementKind::General: break;
  }
  throw DomainError("assemble_energy: the general arrangement has no closed assembly");
}

/// Energies and forces for one pair of spheres. The spins stored in the
/// context are ignored; they are passed per call. Auxiliary-function values
/// are cached by |W| quantized to 1e-12 of the resonance of sphere A and are
/// always evaluated at the quantized argument, so cached and fresh results
/// are identical. Safe to share between threads.
class Interaction {
 public:
  explicit Interaction(PairContext ctx, SpectralOptions options = {})
      : ctx_(std::move(ctx)), options_(options) {
    ctx_.a.omega = 0.0;
    ctx_.b.omega = 0.0;
    ctx_.validate();
    options_.validate();
    quantum_ = 1e-12 * resonance_frequency(ctx_.a.material);
  }

  const PairContext& context() const { return ctx_; }
  const SpectralOptions& options() const { return options_; }

  /// Auxiliary function at spin W [J].
  double aux(double spin) const {
    const double steps = std::round(std::abs(spin) / quantum_);
    if (!std::isfinite(spin) || steps > 9e18) throw DomainError("Interaction::aux: spin out of range");
    const auto key = static_cast<std::int64_t>(steps);
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const double value = aux_energy(ctx_, static_cast<double>(key) * quantum_, options_);
    std::lock_guard lock(mutex_);
    cache_.emplace(key, value);
    return value;
  }

  /// Energy of both spheres at rest, 12 E(0).
  double static_energy() const { return 12.0 * aux(0.0); }

  double energy(const Arrangement& arrangement, double spin_a, double spin_b) const {
    if (arrangement.kind != ArrangementKind::General) {
      return assemble_energy(arrangement.kind, [this](double w) { return aux(w); }, spin_a, spin_b);
    }
    arrangement.validate();
    PairContext ctx = ctx_;
    ctx.a.omega = spin_a;
    ctx.b.omega = spin_b;
    ctx.a.axis = arrangement.axis_a;
    ctx.b.axis = arrangement.axis_b;
    ctx.direction = arrangement.rhat;
    return general_energy(ctx, options_);
  }

  /// Radial force -dE/dR = 6E/R [N]; negative is attractive.
  double force(const Arrangement& arrangement, double spin_a, double spin_b) const {
    return 6.0 * energy(arrangement, spin_a, spin_b) / ctx_.separation;
  }

  /// F(WA, WB) - F(0, 0) [N]; positive is a repulsive contribution.
  double delta_force(const Arrangement& arrangement, double spin_a, double spin_b) const {
    return force(arrangement, spin_a, spin_b) - force(arrangement, 0.0, 0.0);
  }

  std::size_t cache_size() const {
    std::lock_guard lock(mutex_);
    return cache_.size();
  }

 private:
  PairContext ctx_;
  SpectralOptions options_;
  double quantum_ = 0.0;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::int64_t, double> cache_;
};

inline double energy_rr(const PairContext& ctx, double spin_a, double spin_b, const SpectralOptions& options = {}) {
  return Interaction(ctx, options).energy(Arrangement::canonical(ArrangementKind::RR), spin_a, spin_b);
}

inline double energy_uu(const PairContext& ctx, double spin_a, double spin_b, const SpectralOptions& options = {}) {
  return Interaction(ctx, options).energy(Arrangement::canonical(ArrangementKind::UU), spin_a, spin_b);
}

inline double energy_ur(const PairContext& ctx, double spin_a, double spin_b, const SpectralOptions& options = {}) {
  return Interaction(ctx, options).energy(Arrangement::canonical(ArrangementKind::UR), spin_a, spin_b);
}

inline double energy_uo(const PairContext& ctx, double spin_a, double spin_b, const SpectralOptions& options = {}) {
  return Interaction(ctx, options).energy(Arrangement::canonical(ArrangementKind::UO), spin_a, spin_b);
}

inline double force(const PairContext& ctx, const Arrangement& arrangement, double spin_a, double spin_b,
                    const SpectralOptions& options = {}) {
  return Interaction(ctx, options).force(arrangement, spin_a, spin_b);
}

inline double delta_force(const PairContext& ctx, const Arrangement& arrangement, double spin_a, double spin_b,
                          const SpectralOptions& options = {}) {
  return Interaction(ctx, options).delta_force(arrangement, spin_a, spin_b);
}

}  // namespace spinvdw
