#pragma once

#include <cmath>
#include <string>

#include "fabrics/energy.hpp"

namespace fabrics {

// Barrier task-space values below this are boundary violations, not states.
inline constexpr double kBarrierFloor = 1e-9;

// Logistic, evaluated without overflow for large |u|.
inline double logistic(double u) {
  return u >= 0.0 ? 1.0 / (1.0 + std::exp(-u))
                  : std::exp(u) / (1.0 + std::exp(u));
}

inline double log1p_exp(double u) {
  // log(1 + e^u)
  return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
}

struct EnergyParams {
  int dim = 2;
  double scale = 1.0;    // lambda (euclidean, barrier_scaled), m (vortex_zone)
  double m_upper = 1.0;  // mbar
  double m_lower = 0.0;  // munder
  double alpha = 1.0;    // switch rate: alpha_s (radial_switch), alpha_m (priority_radial)
  double radius = 1.0;   // r: switch radius / obstacle or vortex radius
  double k = 1.0;        // barrier gain of the chomp-like psi
  Vec center;            // obstacle / vortex center
};

namespace detail {

// Energies of the form L = w(x) ||xd||^2 share their Euler-Lagrange
// structure:  M = 2 w I,  f = 2 (grad_w . xd) xd - ||xd||^2 grad_w.
// All are homogeneous of degree 2 in velocity with H = L.
inline EnergyLagrangian conformal_energy(
    std::string name, int dim, std::function<double(const Vec&)> weight,
    std::function<Vec(const Vec&)> weight_gradient) {
  EnergyLagrangian e;
  e.name = std::move(name);
  e.dim = dim;
  e.value = [weight](const Vec& x, const Vec& xd) {
    return weight(x) * xd.squaredNorm();
  };
  e.el_terms = [weight, weight_gradient, dim](const Vec& x, const Vec& xd) {
    const double w = weight(x);
    const Vec g = weight_gradient(x);
    Mat m = 2.0 * w * Mat::Identity(dim, dim);
    Vec f = 2.0 * g.dot(xd) * xd - xd.squaredNorm() * g;
    return std::make_pair(m, f);
  };
  e.hamiltonian = e.value;
  e.structure_value = [weight](const Vec& x, const Vec& xd) {
    return std::sqrt(std::max(0.0, 2.0 * weight(x))) * xd.norm();
  };
  return e;
}

inline void check_barrier_coord(double x, const Vec& pos, const Vec& vel) {
  if (!(x > kBarrierFloor)) {
    throw EvaluationError("barrier coordinate at or below floor", pos, vel);
  }
}

}  // namespace detail

// L = (lambda/2) ||xd||^2
inline EnergyLagrangian euclidean_energy(int dim, double lambda) {
  if (lambda <= 0.0) {
    throw std::invalid_argument("euclidean_energy: lambda must be positive");
  }
  return detail::conformal_energy(
      "euclidean", dim, [lambda](const Vec&) { return 0.5 * lambda; },
      [dim](const Vec&) { return Vec(Vec::Zero(dim)); });
}

// 1-D limit/obstacle priority: L = 1/2 s(xd) (lambda/x) xd^2 where the hard
// switch s is 1 while moving toward the boundary (xd < 0) and 0 otherwise.
// The switch is piecewise constant under Euler-Lagrange differentiation.
inline EnergyLagrangian barrier_scaled_energy(double lambda) {
  if (lambda <= 0.0) {
    throw std::invalid_argument("barrier_scaled: lambda must be positive");
  }
  EnergyLagrangian e;
  e.name = "barrier_scaled";
  e.dim = 1;
  auto sw = [](const Vec& xd) { return xd[0] < 0.0 ? 1.0 : 0.0; };
  e.value = [lambda, sw](const Vec& x, const Vec& xd) {
    detail::check_barrier_coord(x[0], x, xd);
    return 0.5 * sw(xd) * (lambda / x[0]) * xd[0] * xd[0];
  };
  e.el_terms = [lambda, sw](const Vec& x, const Vec& xd) {
    detail::check_barrier_coord(x[0], x, xd);
    const double s = sw(xd);
    Mat m(1, 1);
    m(0, 0) = s * lambda / x[0];
    Vec f(1);
    f[0] = -0.5 * s * lambda / (x[0] * x[0]) * xd[0] * xd[0];
    return std::make_pair(m, f);
  };
  e.hamiltonian = e.value;
  e.structure_value = [lambda, sw](const Vec& x, const Vec& xd) {
    detail::check_barrier_coord(x[0], x, xd);
    return std::sqrt(sw(xd) * lambda / x[0]) * std::abs(xd[0]);
  };
  return e;
}

// CHOMP-like: L = 1/2 psi(phi(q)) ||qd||^2 with psi = k/phi^2 and phi the
// circle distance (||q - c|| - r)/r.
inline EnergyLagrangian chomp_like_energy(int dim, double k, const Vec& center,
                                          double radius) {
  if (k <= 0.0 || radius <= 0.0) {
    throw std::invalid_argument("chomp_like: k and radius must be positive");
  }
  auto weight = [k, center, radius](const Vec& q) {
    const double phi = ((q - center).norm() - radius) / radius;
    detail::check_barrier_coord(phi, q, Vec::Zero(q.size()));
    return 0.5 * k / (phi * phi);
  };
  auto grad = [k, center, radius](const Vec& q) {
    const Vec d = q - center;
    const double dist = d.norm();
    const double phi = (dist - radius) / radius;
    detail::check_barrier_coord(phi, q, Vec::Zero(q.size()));
    // d(psi/2)/dphi = -k/phi^3, dphi/dq = d / (r ||d||)
    return Vec(-k / (phi * phi * phi) * d / (radius * dist));
  };
  return detail::conformal_energy("chomp_like", dim, weight, grad);
}

// Directionally weighted 1-D Finsler energy on a distance coordinate:
// L = xd^2 / (2 x^2).
inline EnergyLagrangian directional_energy() {
  EnergyLagrangian e;
  e.name = "directional";
  e.dim = 1;
  e.value = [](const Vec& x, const Vec& xd) {
    detail::check_barrier_coord(x[0], x, xd);
    return xd[0] * xd[0] / (2.0 * x[0] * x[0]);
  };
  e.el_terms = [](const Vec& x, const Vec& xd) {
    detail::check_barrier_coord(x[0], x, xd);
    Mat m(1, 1);
    m(0, 0) = 1.0 / (x[0] * x[0]);
    Vec f(1);
    // d(1/x^2)/dx = -2/x^3; f = (dM/dx) xd^2 - 1/2 (dM/dx) xd^2
    f[0] = -xd[0] * xd[0] / (x[0] * x[0] * x[0]);
    return std::make_pair(m, f);
  };
  e.hamiltonian = e.value;
  e.structure_value = [](const Vec& x, const Vec& xd) {
    detail::check_barrier_coord(x[0], x, xd);
    return std::abs(xd[0]) / x[0];
  };
  return e;
}

// Goal attractor priority: L = xd^T G_a xd with
// G_a = (s(||x||)(mbar - munder) + munder) I, s a tanh switch at radius r.
inline EnergyLagrangian radial_switch_energy(int dim, double m_upper,
                                             double m_lower, double alpha_s,
                                             double radius) {
  if (m_upper <= 0.0 || m_lower < 0.0 || alpha_s <= 0.0 || radius <= 0.0) {
    throw std::invalid_argument("radial_switch: bad parameters");
  }
  auto weight = [=](const Vec& x) {
    const double s = 0.5 * (std::tanh(-alpha_s * (x.norm() - radius)) + 1.0);
    return s * (m_upper - m_lower) + m_lower;
  };
  auto grad = [=](const Vec& x) {
    const double rho = x.norm();
    if (rho < 1e-12) return Vec(Vec::Zero(dim));
    const double th = std::tanh(-alpha_s * (rho - radius));
    const double ds = -0.5 * alpha_s * (1.0 - th * th);
    return Vec((m_upper - m_lower) * ds / rho * x);
  };
  return detail::conformal_energy("radial_switch", dim, weight, grad);
}

// Vortex zone priority: L = m s(q) qd^T qd with
// s = (||q-c|| - r)^2 / ||q-c||^2 inside the radius, 0 outside.
inline EnergyLagrangian vortex_zone_energy(int dim, double m, const Vec& center,
                                           double radius) {
  if (m <= 0.0 || radius <= 0.0) {
    throw std::invalid_argument("vortex_zone: m and radius must be positive");
  }
  auto weight = [=](const Vec& q) {
    const double d = (q - center).norm();
    if (d >= radius) return 0.0;
    if (d < 1e-9) {
      throw EvaluationError("vortex center singularity", q, Vec::Zero(dim));
    }
    const double t = (d - radius) / d;
    return m * t * t;
  };
  auto grad = [=](const Vec& q) {
    const Vec dv = q - center;
    const double d = dv.norm();
    if (d >= radius) return Vec(Vec::Zero(dim));
    if (d < 1e-9) {
      throw EvaluationError("vortex center singularity", q, Vec::Zero(dim));
    }
    // ds/dd = 2 r (d - r) / d^3
    const double ds = 2.0 * radius * (d - radius) / (d * d * d);
    return Vec(m * ds / d * dv);
  };
  return detail::conformal_energy("vortex_zone", dim, weight, grad);
}

// Potential priority: L = xd^T M_psi xd with M_psi = w(||x||) I,
// w = (mbar - munder) exp(-(alpha_m ||x||)^2) + munder.
inline EnergyLagrangian priority_radial_energy(int dim, double m_upper,
                                               double m_lower,
                                               double alpha_m) {
  if (m_upper <= 0.0 || m_lower <= 0.0 || alpha_m <= 0.0) {
    throw std::invalid_argument("priority_radial: bad parameters");
  }
  auto weight = [=](const Vec& x) {
    return (m_upper - m_lower) * std::exp(-alpha_m * alpha_m * x.squaredNorm()) +
           m_lower;
  };
  auto grad = [=](const Vec& x) {
    const double g =
        (m_upper - m_lower) * std::exp(-alpha_m * alpha_m * x.squaredNorm());
    return Vec(-2.0 * alpha_m * alpha_m * g * x);
  };
  return detail::conformal_energy("priority_radial", dim, weight, grad);
}

inline EnergyLagrangian make_builtin_energy(const std::string& kind,
                                            const EnergyParams& p) {
  if (kind == "euclidean") return euclidean_energy(p.dim, p.scale);
  if (kind == "barrier_scaled") return barrier_scaled_energy(p.scale);
  if (kind == "chomp_like")
    return chomp_like_energy(p.dim, p.k, p.center, p.radius);
  if (kind == "directional") return directional_energy();
  if (kind == "radial_switch")
    return radial_switch_energy(p.dim, p.m_upper, p.m_lower, p.alpha, p.radius);
  if (kind == "vortex_zone")
    return vortex_zone_energy(p.dim, p.scale, p.center, p.radius);
  if (kind == "priority_radial")
    return priority_radial_energy(p.dim, p.m_upper, p.m_lower, p.alpha);
  throw std::invalid_argument("make_builtin_energy: unknown kind '" + kind +
                              "'");
}

}  // namespace fabrics
