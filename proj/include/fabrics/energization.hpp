#pragma once

#include <utility>
#include <vector>

#include "fabrics/energy.hpp"
#include "fabrics/geometry.hpp"
#include "fabrics/tree.hpp"

namespace fabrics {

// Below this speed the along-velocity correction is dropped (alpha = 0) and
// the energized acceleration falls back to -h; keeps the field continuous at
// rest for HD2 systems.
inline constexpr double kVelocityFloor = 1e-9;

// P_e = M_e R_pe with R_pe = M_e^{-1} - xd xd^T / (xd^T M_e xd).
// Satisfies P_e^2 = P_e and xd^T P_e f = 0 for every f. The matrix square
// root form is never computed.
inline Mat projector_pe(const EnergyLagrangian& energy, const Vec& x,
                        const Vec& xd) {
  if (xd.norm() < kVelocityFloor) {
    throw std::invalid_argument("projector_pe: undefined at zero velocity");
  }
  const Mat m = energy.el_terms(x, xd).first;
  const double mv = xd.dot(m * xd);
  if (!(mv > 0.0)) {
    throw EvaluationError("projector_pe: xd^T M_e xd not positive", x, xd);
  }
  const int n = energy.dim;
  return Mat(Mat::Identity(n, n) - (m * xd) * xd.transpose() / mv);
}

// Energization coefficient of Proposition "system energization":
// xdd = -h - alpha xd conserves H_e with
// alpha = -(xd^T M_e xd)^{-1} xd^T [M_e h - f_e].
inline double energization_alpha(const EnergyLagrangian& energy, const Vec& x,
                                 const Vec& xd, const Vec& h_value) {
  if (xd.norm() < kVelocityFloor) return 0.0;
  auto [m, f] = energy.el_terms(x, xd);
  const double mv = xd.dot(m * xd);
  if (!(mv > 0.0)) {
    throw EvaluationError("energize: xd^T M_e xd not positive", x, xd);
  }
  return -xd.dot(m * h_value - f) / mv;
}

// xdd + h + alpha_{H_e} xd = 0: the original system bent by an
// along-velocity acceleration so it conserves the given energy.
struct EnergizedSystem {
  EnergyLagrangian energy;
  H2Fn base_h;
  std::function<double(const Vec&, const Vec&)> alpha;

  Vec acceleration(const Vec& x, const Vec& xd) const {
    return -base_h(x, xd) - alpha(x, xd) * xd;
  }

  // Zero-work force form (M_e, f_e + P_e[M_e h - f_e]); cross-checked against
  // the alpha form in tests.
  Spec spec() const {
    return Spec{energy.dim,
                [e = energy](const Vec& x, const Vec& xd) {
                  return e.el_terms(x, xd).first;
                },
                [e = energy, h = base_h](const Vec& x, const Vec& xd) {
                  auto [m, f] = e.el_terms(x, xd);
                  const Vec hv = h(x, xd);
                  if (xd.norm() < kVelocityFloor) return Vec(m * hv);
                  const double mv = xd.dot(m * xd);
                  const Vec r = m * hv - f;
                  const Mat pe =
                      Mat::Identity(e.dim, e.dim) -
                      (m * xd) * xd.transpose() / mv;
                  return Vec(f + pe * r);
                }};
  }
};

inline EnergizedSystem energize(const EnergyLagrangian& energy, H2Fn h) {
  EnergizedSystem sys;
  sys.energy = energy;
  sys.base_h = h;
  sys.alpha = [energy, h](const Vec& x, const Vec& xd) {
    return energization_alpha(energy, x, xd, h(x, xd));
  };
  return sys;
}

inline EnergizedSystem energize(const EnergyLagrangian& energy,
                                const GeometryGenerator& gen) {
  require_dim(gen.dim, energy.dim, "energize");
  return energize(energy, gen.h2);
}

// Root acceleration via (a) energize in the leaf then pull back, and
// (b) pull back with the energy metric then energize with the pulled-back
// energy. Returns the max deviation ||a - b|| over the states; the theorem
// says both routes coincide where the pullback metric is full rank.
inline double commutation_check(const EnergyLagrangian& energy, const H2Fn& h,
                                const TaskMap& map,
                                const std::vector<std::pair<Vec, Vec>>& states,
                                double cond_cap = 1e12) {
  require_dim(energy.dim, map.codomain_dim, "commutation_check");

  // (a) leaf energization, pulled back
  const Spec leaf_energized = energize(energy, h).spec();
  const Spec route_a = pullback(map, leaf_energized);

  // (b) metric-weighted pullback of the raw system, energized at the root
  const EnergyLagrangian pulled_energy = pullback_energy(map, energy);
  const Spec raw{energy.dim,
                 [energy](const Vec& x, const Vec& xd) {
                   return energy.el_terms(x, xd).first;
                 },
                 [energy, h](const Vec& x, const Vec& xd) {
                   return Vec(energy.el_terms(x, xd).first * h(x, xd));
                 }};
  const Spec pulled_raw = pullback(map, raw);
  const H2Fn root_h = [pulled_raw, cond_cap](const Vec& q, const Vec& qd) {
    return Vec(solve_metric(pulled_raw.metric_at(q, qd),
                            pulled_raw.force_at(q, qd), cond_cap));
  };
  const EnergizedSystem route_b = energize(pulled_energy, root_h);

  double worst = 0.0;
  for (const auto& [q, qd] : states) {
    const Mat m_pulled = pulled_raw.metric_at(q, qd);
    Eigen::FullPivLU<Mat> lu(symmetrized(m_pulled));
    if (!lu.isInvertible()) {
      throw EvaluationError("commutation_check: rank-deficient pullback metric",
                            q, qd);
    }
    const Vec a =
        -solve_metric(route_a.metric_at(q, qd), route_a.force_at(q, qd),
                      cond_cap);
    const Vec b = route_b.acceleration(q, qd);
    worst = std::max(worst, (a - b).norm());
  }
  return worst;
}

}  // namespace fabrics
