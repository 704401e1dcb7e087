#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fabrics/forcing.hpp"
#include "fabrics/types.hpp"

namespace fabrics {

enum class EventKind { kConverged, kMaxTime, kBarrierViolation };

inline const char* event_name(EventKind k) {
  switch (k) {
    case EventKind::kConverged: return "converged";
    case EventKind::kMaxTime: return "max_time";
    case EventKind::kBarrierViolation: return "barrier_violation";
  }
  return "?";
}

struct TerminalEvent {
  EventKind kind = EventKind::kMaxTime;
  double time = 0.0;
  Vec position;
  Vec velocity;
  std::string detail;
};

struct EnergySample {
  double system = 0.0;     // H_e
  double execution = 0.0;  // L_ex
  double potential = 0.0;  // psi proxy
};

// Time-indexed states, energies, and per-step control scalars for one
// simulation, write-once then immutable.
struct RolloutRecord {
  std::vector<double> times;
  std::vector<Vec> positions;
  std::vector<Vec> velocities;
  std::vector<EnergySample> energies;
  std::vector<StepDiagnostics> diagnostics;
  TerminalEvent event;
  std::vector<std::string> warnings;
  unsigned long long seed = 0;

  size_t size() const { return times.size(); }
};

using AccelFn3 = std::function<Vec(const Vec&, const Vec&, double)>;
using InstrumentFn =
    std::function<void(double, const Vec&, const Vec&, RolloutRecord&)>;
// Invoked on each accepted state; non-empty result halts the rollout.
using GuardFn = std::function<std::optional<std::string>(const Vec&, const Vec&)>;

// Classical fixed-step RK4 on the first-order lift (q, qd). Deterministic
// given the initial state and step count. Non-finite accelerations and guard
// hits terminate the rollout with a barrier_violation style event.
inline RolloutRecord rk4_rollout(const AccelFn3& accel, Vec q0, Vec qd0,
                                 double dt, double horizon,
                                 const InstrumentFn& instrument = {},
                                 const GuardFn& guard = {},
                                 const GuardFn& converged = {}) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_rollout: dt must be > 0");
  RolloutRecord rec;
  const long long steps = std::llround(horizon / dt);
  rec.times.reserve(steps + 1);

  Vec q = std::move(q0);
  Vec qd = std::move(qd0);
  double hold_since = -1.0;

  auto record_state = [&](double t) {
    rec.times.push_back(t);
    rec.positions.push_back(q);
    rec.velocities.push_back(qd);
    if (instrument) instrument(t, q, qd, rec);
  };

  auto violation = [&](double t, const std::string& why) {
    rec.event = {EventKind::kBarrierViolation, t, q, qd, why};
  };

  for (long long i = 0; i <= steps; ++i) {
    const double t = i * dt;
    if (guard) {
      if (auto why = guard(q, qd)) {
        record_state(t);
        violation(t, *why);
        return rec;
      }
    }
    record_state(t);

    if (converged && converged(q, qd)) {
      if (hold_since < 0.0) hold_since = t;
      if (t - hold_since >= kConvergedHoldTime) {
        rec.event = {EventKind::kConverged, t, q, qd, ""};
        return rec;
      }
    } else {
      hold_since = -1.0;
    }
    if (i == steps) break;

    try {
      const Vec k1q = qd;
      const Vec k1v = accel(q, qd, t);
      const Vec k2q = qd + 0.5 * dt * k1v;
      const Vec k2v = accel(q + 0.5 * dt * k1q, k2q, t + 0.5 * dt);
      const Vec k3q = qd + 0.5 * dt * k2v;
      const Vec k3v = accel(q + 0.5 * dt * k2q, k3q, t + 0.5 * dt);
      const Vec k4q = qd + dt * k3v;
      const Vec k4v = accel(q + dt * k3q, k4q, t + dt);
      const Vec dq = dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
      const Vec dv = dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      if (!all_finite(dq) || !all_finite(dv)) {
        violation(t, "non-finite acceleration");
        return rec;
      }
      q += dq;
      qd += dv;
    } catch (const EvaluationError& err) {
      violation(t, err.what());
      return rec;
    }
  }
  rec.event = {EventKind::kMaxTime, steps * dt, q, qd, ""};
  return rec;
}

inline double relative_drift(const std::vector<double>& series) {
  if (series.empty()) return 0.0;
  const double h0 = series.front();
  double worst = 0.0;
  for (double h : series) {
    worst = std::max(worst, std::abs(h - h0));
  }
  return worst / std::max(1e-12, std::abs(h0));
}

}  // namespace fabrics
