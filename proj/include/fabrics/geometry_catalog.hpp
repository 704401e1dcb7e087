#pragma once

#include <cmath>
#include <string>

#include "fabrics/energy_catalog.hpp"
#include "fabrics/geometry.hpp"

namespace fabrics {

// Velocity magnitudes below this make velocity-direction factors zero; HD2
// forces h2(x, 0) = 0 by continuity.
inline constexpr double kVelocityDirFloor = 1e-12;

struct GeometryParams {
  int dim = 2;
  double scale = 1.0;    // lambda
  double k = 1.0;        // barrier/potential gain
  double alpha = 1.0;    // alpha_psi of the smoothed-norm potential
  double radius = 1.0;   // circle radius
  Vec center;            // circle center / default config / goal
  Vec normal;            // floor normal
  double vortex_force = 1.0;
  bool vortex_ccw = true;
  // SmoothReLU barrier potential (limits and obstacle):
  double a1 = 0.4, a2 = 0.2, a3 = 20.0, a4 = 5.0;
};

inline GeometryGenerator zero_geometry(int dim) {
  return GeometryGenerator{"zero", dim, [dim](const Vec&, const Vec&) {
                             return Vec(Vec::Zero(dim));
                           }};
}

namespace detail {

// psi(x) = a1/x^2 + a2 log(e^{-a3 (x - a4)} + 1), the repulsive barrier
// potential for 1-D distance coordinates.
inline double barrier_psi(double x, const GeometryParams& p) {
  return p.a1 / (x * x) + p.a2 * log1p_exp(-p.a3 * (x - p.a4));
}

inline double barrier_psi_grad(double x, const GeometryParams& p) {
  return -2.0 * p.a1 / (x * x * x) - p.a2 * p.a3 * logistic(-p.a3 * (x - p.a4));
}

// Smoothed-norm attractor potential psi1 and its gradient k tanh(a ||x||) xhat.
inline Vec attractor_gradient(const Vec& x, double k, double alpha_psi) {
  const double n = x.norm();
  if (n < 1e-12) return Vec::Zero(x.size());
  return Vec(k * std::tanh(alpha_psi * n) / n * x);
}

inline double attractor_psi1(const Vec& x, double k, double alpha_psi) {
  const double n = x.norm();
  return k * (n + log1p_exp(-2.0 * alpha_psi * n) / alpha_psi);
}

}  // namespace detail

// 1-D repulsion from a limit/obstacle distance coordinate:
// h2 = lambda xd^2 dpsi/dx.
inline GeometryGenerator barrier_geometry_1d(const GeometryParams& p) {
  return GeometryGenerator{
      "barrier_1d", 1, [p](const Vec& x, const Vec& xd) {
        if (!(x[0] > kBarrierFloor)) {
          throw EvaluationError("barrier coordinate at or below floor", x, xd);
        }
        Vec h(1);
        h[0] = p.scale * xd[0] * xd[0] * detail::barrier_psi_grad(x[0], p);
        return h;
      }};
}

// Circle-obstacle repulsion in root coordinates with psi = k/phi^2,
// phi = (||q - c|| - r)/r:  h2 = lambda ||qd||^2 dpsi/dq.
inline GeometryGenerator circle_barrier_geometry(const GeometryParams& p) {
  return GeometryGenerator{
      "circle_barrier", p.dim, [p](const Vec& q, const Vec& qd) {
        const Vec d = q - p.center;
        const double dist = d.norm();
        const double phi = (dist - p.radius) / p.radius;
        if (!(phi > kBarrierFloor)) {
          throw EvaluationError("inside obstacle barrier", q, qd);
        }
        const Vec dphi = d / (p.radius * dist);
        return Vec(p.scale * qd.squaredNorm() *
                   (-2.0 * p.k / (phi * phi * phi)) * dphi);
      }};
}

// Generator reproducing an energy Lagrangian's own flow:
// xdd = -M_e^{-1} f_e, i.e. h2 = M_e^{-1} f_e.
inline GeometryGenerator energy_flow_geometry(const EnergyLagrangian& energy) {
  return GeometryGenerator{
      "energy_flow[" + energy.name + "]", energy.dim,
      [energy](const Vec& x, const Vec& xd) {
        auto [m, f] = energy.el_terms(x, xd);
        return Vec(solve_metric(m, f));
      }};
}

// Finsler-scaled repulsion: h2 = lambda L_dir dpsi/dq with the directional
// energy L_dir = (dphi . qd)^2 / (2 phi^2) on the circle distance.
inline GeometryGenerator finsler_scaled_geometry(const GeometryParams& p) {
  return GeometryGenerator{
      "finsler_scaled", p.dim, [p](const Vec& q, const Vec& qd) {
        const Vec d = q - p.center;
        const double dist = d.norm();
        const double phi = (dist - p.radius) / p.radius;
        if (!(phi > kBarrierFloor)) {
          throw EvaluationError("inside obstacle barrier", q, qd);
        }
        const Vec dphi = d / (p.radius * dist);
        const double dphid = dphi.dot(qd);
        const double energy = dphid * dphid / (2.0 * phi * phi);
        return Vec(p.scale * energy * (-2.0 * p.k / (phi * phi * phi)) * dphi);
      }};
}

// Swirl: h2 = f ||qd||^2 R qdhat with R a quarter-turn rotation.
inline GeometryGenerator vortex_geometry(double force, bool ccw) {
  Mat r(2, 2);
  if (ccw) {
    r << 0.0, -1.0, 1.0, 0.0;
  } else {
    r << 0.0, 1.0, -1.0, 0.0;
  }
  return GeometryGenerator{"vortex", 2, [force, r](const Vec&, const Vec& qd) {
                             const double n = qd.norm();
                             if (n < kVelocityDirFloor)
                               return Vec(Vec::Zero(2));
                             // ||qd||^2 R qdhat = ||qd|| R qd
                             return Vec(force * n * (r * qd));
                           }};
}

// Gradient-following attractor: h2 = lambda ||xd||^2 dpsi1/dx on the offset
// task space x = q - q_d.
inline GeometryGenerator attractor_geometry(const GeometryParams& p) {
  return GeometryGenerator{
      "attractor", p.dim, [p](const Vec& x, const Vec& xd) {
        return Vec(p.scale * xd.squaredNorm() *
                   detail::attractor_gradient(x, p.k, p.alpha));
      }};
}

// Pulls the configuration toward a default posture:
// xdd = ||qd||^2 (q0 - q), i.e. h2 = ||qd||^2 (q - q0).
inline GeometryGenerator redundancy_geometry(const Vec& q0) {
  const int dim = static_cast<int>(q0.size());
  return GeometryGenerator{"redundancy", dim, [q0](const Vec& q, const Vec& qd) {
                             return Vec(qd.squaredNorm() * (q - q0));
                           }};
}

// Lifts along the floor normal: xdd = ||xd||^2 nhat, h2 = -||xd||^2 nhat.
inline GeometryGenerator floor_lift_geometry(const Vec& normal) {
  const int dim = static_cast<int>(normal.size());
  Vec nhat = normal / normal.norm();
  return GeometryGenerator{"floor_lift", dim,
                           [nhat](const Vec&, const Vec& xd) {
                             return Vec(-xd.squaredNorm() * nhat);
                           }};
}

// Accelerates toward a goal point: xdd = ||xd||^2 (x_g - x).
inline GeometryGenerator goal_attract_geometry(const Vec& goal) {
  const int dim = static_cast<int>(goal.size());
  return GeometryGenerator{"goal_attract", dim,
                           [goal](const Vec& x, const Vec& xd) {
                             return Vec(xd.squaredNorm() * (x - goal));
                           }};
}

inline GeometryGenerator make_builtin_geometry(const std::string& kind,
                                               const GeometryParams& p) {
  if (kind == "zero") return zero_geometry(p.dim);
  if (kind == "barrier_1d") return barrier_geometry_1d(p);
  if (kind == "circle_barrier") return circle_barrier_geometry(p);
  if (kind == "finsler_scaled") return finsler_scaled_geometry(p);
  if (kind == "vortex") return vortex_geometry(p.vortex_force, p.vortex_ccw);
  if (kind == "attractor") return attractor_geometry(p);
  if (kind == "redundancy") return redundancy_geometry(p.center);
  if (kind == "floor_lift") return floor_lift_geometry(p.normal);
  if (kind == "goal_attract") return goal_attract_geometry(p.center);
  throw std::invalid_argument("make_builtin_geometry: unknown kind '" + kind +
                              "'");
}

}  // namespace fabrics
