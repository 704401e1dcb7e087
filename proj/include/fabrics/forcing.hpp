#pragma once

#include <cmath>
#include <functional>
#include <utility>

#include "fabrics/energy.hpp"
#include "fabrics/energy_catalog.hpp"
#include "fabrics/energization.hpp"
#include "fabrics/geometry.hpp"
#include "fabrics/task_map.hpp"

namespace fabrics {

// Convergence event thresholds: at rest when the task-space residual and the
// speed stay below these for the hold time.
inline constexpr double kConvergedSpeed = 1e-3;
inline constexpr double kConvergedDistance = 0.1;
inline constexpr double kConvergedHoldTime = 0.5;

// Coefficient alpha such that xdd = xdd_d + alpha xd conserves the energy:
// alpha = -(xd^T M_e xd)^{-1} xd^T [M_e xdd_d + f_e].
// For the Euclidean energy this reduces to -xd.xdd_d / xd.xd, i.e. the
// orthogonal projection of the desired acceleration.
inline double alpha_projection(const EnergyLagrangian& energy, const Vec& xdd_d,
                               const Vec& x, const Vec& xd) {
  if (xd.norm() < kVelocityFloor) return 0.0;
  auto [m, f] = energy.el_terms(x, xd);
  const double mv = xd.dot(m * xd);
  if (!(mv > 0.0)) {
    throw EvaluationError("alpha_projection: xd^T M_e xd not positive", x, xd);
  }
  return -xd.dot(m * xdd_d + f) / mv;
}

// Finite forcing potential on a task space x = phi(q): gradient
// M_psi(x) dpsi1(x) with the smoothed-norm attractor psi1 and radially
// symmetric priority M_psi = w(||x||) I, munder <= w <= mbar.
struct ForcingPotential {
  TaskMap task_map;
  std::function<Vec(const Vec&)> base_gradient;    // dpsi1
  std::function<Mat(const Vec&)> priority_metric;  // M_psi
  double k = 1.0;
  double alpha_psi = 1.0;
  double m_upper = 1.0;
  double m_lower = 1.0;
  double alpha_m = 1.0;

  // J^T M_psi(phi(q)) dpsi1(phi(q))
  Vec root_gradient(const Vec& q) const {
    const Vec x = task_map.map(q);
    return task_map.jacobian(q).transpose() *
           (priority_metric(x) * base_gradient(x));
  }

  // The energy qd^T M_psi qd registered into the system-energy sum so the
  // priority weighs this policy like the other components.
  EnergyLagrangian priority_energy() const {
    return priority_radial_energy(task_map.codomain_dim, m_upper, m_lower,
                                  alpha_m);
  }

  // Scalar psi for diagnostics, reconstructed by quadrature of the radial
  // profile w(u) k tanh(alpha_psi u).
  double psi_scalar(const Vec& q) const {
    const double rho = task_map.map(q).norm();
    auto f = [this](double u) {
      const double w = (m_upper - m_lower) * std::exp(-(alpha_m * u) *
                                                      (alpha_m * u)) +
                       m_lower;
      return w * k * std::tanh(alpha_psi * u);
    };
    // composite Simpson, fine fixed grid
    const int n = 2000;
    const double h = rho / n;
    if (rho <= 0.0) return 0.0;
    double s = f(0.0) + f(rho);
    for (int i = 1; i < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0;
  }
};

inline ForcingPotential make_attractor_potential(TaskMap map, double k,
                                                 double alpha_psi,
                                                 double m_upper, double m_lower,
                                                 double alpha_m) {
  if (k <= 0.0 || alpha_psi <= 0.0 || m_upper <= 0.0 || m_lower <= 0.0 ||
      alpha_m <= 0.0) {
    throw std::invalid_argument("attractor potential: parameters must be positive");
  }
  ForcingPotential p;
  p.task_map = std::move(map);
  const int dim = p.task_map.codomain_dim;
  p.base_gradient = [k, alpha_psi](const Vec& x) {
    const double n = x.norm();
    if (n < 1e-12) return Vec(Vec::Zero(x.size()));
    return Vec(k * std::tanh(alpha_psi * n) / n * x);
  };
  p.priority_metric = [m_upper, m_lower, alpha_m, dim](const Vec& x) {
    const double w =
        (m_upper - m_lower) * std::exp(-(alpha_m * x.norm()) *
                                       (alpha_m * x.norm())) +
        m_lower;
    return Mat(w * Mat::Identity(dim, dim));
  };
  p.k = k;
  p.alpha_psi = alpha_psi;
  p.m_upper = m_upper;
  p.m_lower = m_lower;
  p.alpha_m = alpha_m;
  return p;
}

enum class EtaMode { kSwitch, kFixedOne };

// Execution-energy regulation and damping.
struct SpeedController {
  EnergyLagrangian execution_energy;  // L_ex; Euclidean (2/v_d scaling) default
  double ex_level = 1.0;              // L_ex,d
  double alpha_eta = 10.0;
  double alpha_shift = 0.0;
  EtaMode eta_mode = EtaMode::kSwitch;
  double damping = 6.5;      // B
  double damping_min = 0.01; // Bunder, strictly positive
  double alpha_beta = 0.5;
  double radius_beta = 1.5;  // switch radius in the attractor task space

  double eta(double ex_value) const {
    if (eta_mode == EtaMode::kFixedOne) return 1.0;
    return 0.5 *
           (std::tanh(-alpha_eta * (ex_value - ex_level) - alpha_shift) + 1.0);
  }

  double beta_switch(double distance) const {
    return 0.5 * (std::tanh(-alpha_beta * (distance - radius_beta)) + 1.0);
  }
};

// L_ex = (1/v_d) qd^T qd, held at level v_d when ||qd|| = v_d.
inline SpeedController make_speed_controller(int dim, double v_d, double B,
                                             double B_min, double alpha_beta,
                                             double r_beta,
                                             double alpha_eta = 10.0,
                                             double alpha_shift = 0.0) {
  if (v_d <= 0.0 || B_min <= 0.0) {
    throw std::invalid_argument("speed controller: v_d and B_min must be positive");
  }
  SpeedController c;
  c.execution_energy = euclidean_energy(dim, 2.0 / v_d);
  c.ex_level = v_d;
  c.alpha_eta = alpha_eta;
  c.alpha_shift = alpha_shift;
  c.damping = B;
  c.damping_min = B_min;
  c.alpha_beta = alpha_beta;
  c.radius_beta = r_beta;
  return c;
}

struct StepDiagnostics {
  double alpha_ex0 = 0.0;
  double alpha_ex_psi = 0.0;
  double alpha_le = 0.0;
  double eta = 0.0;
  double beta = 0.0;

  double alpha_ex() const { return eta * alpha_ex0 + (1.0 - eta) * alpha_ex_psi; }
};

// One executed control cycle:
//   qdd = -h2 - M_e^{-1} dpsi + alpha_ex qd - beta qd
// with alpha_ex = eta alpha_ex0 + (1 - eta) alpha_ex_psi and
// beta = s_beta B + Bunder + max{0, alpha_ex - alpha_Le}.
inline std::pair<Vec, StepDiagnostics> speed_controlled_step(
    const GeometryGenerator& fabric_h2, const EnergyLagrangian& system_energy,
    const ForcingPotential& potential, const SpeedController& ctl, const Vec& q,
    const Vec& qd, double cond_cap = 1e12) {
  const Vec h2v = fabric_h2.h2(q, qd);
  const Vec grad = potential.root_gradient(q);
  const Mat m_sys = system_energy.el_terms(q, qd).first;
  const Vec force_accel = solve_metric(m_sys, grad, cond_cap);

  const Vec xdd0 = -h2v;
  const Vec xddpsi = -h2v - force_accel;

  StepDiagnostics d;
  d.alpha_ex0 = alpha_projection(ctl.execution_energy, xdd0, q, qd);
  d.alpha_ex_psi = alpha_projection(ctl.execution_energy, xddpsi, q, qd);
  d.alpha_le = alpha_projection(system_energy, xdd0, q, qd);
  d.eta = ctl.eta(ctl.execution_energy.value(q, qd));
  const double alpha_ex = d.alpha_ex();
  d.beta = ctl.beta_switch(potential.task_map.map(q).norm()) * ctl.damping +
           ctl.damping_min + std::max(0.0, alpha_ex - d.alpha_le);

  Vec qdd = xddpsi + (alpha_ex - d.beta) * qd;
  return {qdd, d};
}

// Unforced, undamped energized fabric: qdd = -h2 + alpha_Le qd.
inline std::pair<Vec, StepDiagnostics> energized_fabric_step(
    const GeometryGenerator& fabric_h2, const EnergyLagrangian& system_energy,
    const Vec& q, const Vec& qd) {
  const Vec h2v = fabric_h2.h2(q, qd);
  StepDiagnostics d;
  d.alpha_le = alpha_projection(system_energy, -h2v, q, qd);
  d.alpha_ex0 = d.alpha_le;
  d.alpha_ex_psi = d.alpha_le;
  d.eta = 1.0;
  d.beta = 0.0;
  return {Vec(-h2v + d.alpha_le * qd), d};
}

}  // namespace fabrics
