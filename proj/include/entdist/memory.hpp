#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>

#include "entdist/error.hpp"

// Time evolution of quantum-memory error and stored-entanglement fidelity,
// and the geometry of the (error, 1 - fidelity) plane built on top of it.
//
// Time is measured in abstract ticks; `dt` is always the storage interval
// elapsed since the node's storage start time.

namespace entdist {

enum class DriftKind { kLinear, kExponential };

inline std::string_view to_string(DriftKind kind) {
  return kind == DriftKind::kLinear ? "linear" : "exponential";
}

inline DriftKind parse_drift_kind(std::string_view name) {
  if (name == "linear") return DriftKind::kLinear;
  if (name == "exponential") return DriftKind::kExponential;
  throw InvalidInput("unknown drift model '" + std::string(name) + "' (expected linear or exponential)");
}

/// Fidelity of the maximally mixed two-qubit state with a Bell state.
inline constexpr double kMaximallyMixedFidelity = 0.25;

struct DriftModel {
  DriftKind kind = DriftKind::kLinear;
  double error_rate = 0.0;   // probability per tick, linear model
  double decay_time = 1.0;   // time constant, exponential model
  double fidelity_floor = kMaximallyMixedFidelity;

  void validate() const {
    if (!(error_rate >= 0.0) || !std::isfinite(error_rate)) throw DomainError("drift model: error_rate must be >= 0");
    if (!(decay_time > 0.0)) throw DomainError("drift model: decay_time must be > 0");
    if (!(fidelity_floor >= 0.0 && fidelity_floor <= 1.0)) throw DomainError("drift model: fidelity_floor must lie in [0,1]");
  }

  friend bool operator==(const DriftModel&, const DriftModel&) = default;
};

struct NodeMemoryState {
  double zeta0 = 0.0;  // memory error probability at storage start
  double f0 = 1.0;     // stored entanglement fidelity at storage start
  double t0 = 0.0;     // storage start time (reporting only)
  DriftModel model;

  void validate() const {
    if (!(zeta0 >= 0.0 && zeta0 <= 1.0)) throw DomainError("memory state: zeta0 must lie in [0,1]");
    if (!(f0 >= 0.0 && f0 <= 1.0)) throw DomainError("memory state: f0 must lie in [0,1]");
    model.validate();
  }

  friend bool operator==(const NodeMemoryState&, const NodeMemoryState&) = default;
};

/// A node's position in the (error, 1 - fidelity) plane.
struct StateVector {
  double eps = 0.0;
  double one_minus_f = 0.0;

  friend bool operator==(const StateVector&, const StateVector&) = default;
};

/// Displacement of a StateVector over a storage interval.
struct ChangeVector {
  double d_eps = 0.0;
  double d_one_minus_f = 0.0;

  friend bool operator==(const ChangeVector&, const ChangeVector&) = default;
};

struct Thresholds {
  double d_max = 0.0;
  double eps_crit = 1.0;
  double f_crit = 0.98;
  double f_delta = 0.0;
  double p_max = 1.0;

  void validate() const {
    if (!(d_max > 0.0) || !std::isfinite(d_max)) throw DomainError("thresholds: d_max must be > 0");
    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!unit(eps_crit)) throw DomainError("thresholds: eps_crit must lie in [0,1]");
    if (!unit(f_crit)) throw DomainError("thresholds: f_crit must lie in [0,1]");
    if (!unit(f_delta)) throw DomainError("thresholds: f_delta must lie in [0,1]");
    if (!(p_max > 0.0 && p_max <= 1.0)) throw DomainError("thresholds: p_max must lie in (0,1]");
  }

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

namespace detail {

inline void check_dt(double dt, const char* op) {
  if (!(dt >= 0.0)) throw DomainError(std::string(op) + ": dt must be >= 0");
}

inline double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace detail

/// Memory error probability after `dt` ticks of storage.
inline double evolve_error(const NodeMemoryState& state, double dt) {
  detail::check_dt(dt, "evolve_error");
  if (dt == 0.0) return state.zeta0;
  const auto& m = state.model;
  switch (m.kind) {
    case DriftKind::kLinear: return detail::clamp_unit(state.zeta0 + m.error_rate * dt);
    case DriftKind::kExponential: return detail::clamp_unit(1.0 - (1.0 - state.zeta0) * std::exp(-dt / m.decay_time));
  }
  return state.zeta0;
}

/// Stored entanglement fidelity after `dt` ticks of storage.
inline double evolve_fidelity(const NodeMemoryState& state, double dt) {
  detail::check_dt(dt, "evolve_fidelity");
  if (dt == 0.0) return state.f0;
  const auto& m = state.model;
  switch (m.kind) {
    case DriftKind::kLinear: return detail::clamp_unit(state.f0 - m.error_rate * dt);
    case DriftKind::kExponential:
      return detail::clamp_unit(m.fidelity_floor + (state.f0 - m.fidelity_floor) * std::exp(-dt / m.decay_time));
  }
  return state.f0;
}

inline StateVector eta_at(const NodeMemoryState& state, double dt) {
  return {evolve_error(state, dt), 1.0 - evolve_fidelity(state, dt)};
}

/// Omega(t0, dt) = eta_at(dt) - eta_at(0).
inline ChangeVector change_vector(const NodeMemoryState& state, double dt) {
  const StateVector start = eta_at(state, 0.0);
  const StateVector now = eta_at(state, dt);
  return {now.eps - start.eps, now.one_minus_f - start.one_minus_f};
}

inline double pair_distance(const StateVector& a, const StateVector& b) {
  return std::hypot(a.eps - b.eps, a.one_minus_f - b.one_minus_f);
}

/// Memory-error mismatch of a node pair; feasible when <= eps_crit.
inline double pair_error(double zeta_i, double zeta_j) { return std::abs(zeta_i - zeta_j); }

/// |(1 - f_i) - (1 - f_j)|; feasible when <= 1 - F_delta.
inline double fidelity_difference(double f_i, double f_j) { return std::abs((1.0 - f_i) - (1.0 - f_j)); }

/// Usability of a stored pair: 1 when both memories drifted identically,
/// falling linearly to 0 once their drift differs by d_max or more.
inline double usability(const ChangeVector& omega_i, const ChangeVector& omega_j, double d_max) {
  if (!(d_max > 0.0)) throw DomainError("usability: d_max must be > 0");
  const double drift = std::hypot(omega_i.d_eps - omega_j.d_eps, omega_i.d_one_minus_f - omega_j.d_one_minus_f);
  return 1.0 - std::min(drift, d_max) / d_max;
}

/// Success probability for a pair at plane distance `d`.
/// p_max * (1 - d / (2 d_max)) on [0, d_max], zero beyond. Strictly positive
/// on the closed interval, so the boundary d == d_max is still usable.
inline double success_probability(double d, const Thresholds& th) {
  if (!(d >= 0.0)) throw DomainError("success_probability: distance must be >= 0");
  if (d > th.d_max) return 0.0;
  return th.p_max * (1.0 - d / (2.0 * th.d_max));
}

/// Product of per-hop usabilities; 1 for an empty path.
inline double path_usability(std::span<const double> omegas) {
  double product = 1.0;
  for (double w : omegas) {
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("path_usability: usability must lie in [0,1]");
    product *= w;
  }
  return product;
}

}  // namespace entdist
