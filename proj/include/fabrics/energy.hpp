#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fabrics/spec.hpp"
#include "fabrics/task_map.hpp"
#include "fabrics/tree.hpp"

namespace fabrics {

using ScalarFn = std::function<double(const Vec&, const Vec&)>;
using ElTermsFn = std::function<std::pair<Mat, Vec>(const Vec&, const Vec&)>;

// Energy Lagrangian L_e(x, xd) with Euler-Lagrange terms
//   M_e = d2L/dxd2,  f_e = d2L/dxd dx * xd - dL/dx
// and Hamiltonian H_e = dL/dxd . xd - L_e.
struct EnergyLagrangian {
  std::string name;
  int dim = 0;
  ScalarFn value;
  ElTermsFn el_terms;
  ScalarFn hamiltonian;
  // Set for Finsler energies: L_g = sqrt(2 L_e), homogeneous of degree 1.
  ScalarFn structure_value;

  bool is_finsler() const { return static_cast<bool>(structure_value); }

  Spec spec() const {
    return Spec{dim,
                [self = *this](const Vec& x, const Vec& xd) {
                  return self.el_terms(x, xd).first;
                },
                [self = *this](const Vec& x, const Vec& xd) {
                  return self.el_terms(x, xd).second;
                }};
  }
};

// Energy time derivative along an arbitrary acceleration:
//   Hdot_e = xd^T (M_e xdd + f_e)
inline double hamiltonian_rate(const EnergyLagrangian& energy, const Vec& x,
                               const Vec& xd, const Vec& xdd) {
  auto [m, f] = energy.el_terms(x, xd);
  return xd.dot(m * xdd + f);
}

// Pullback of an energy through a task map. The Euler-Lagrange operation
// commutes with pullback, so the pulled-back EL terms are the spec pullback
// of the leaf EL terms, and the value/Hamiltonian compose directly.
inline EnergyLagrangian pullback_energy(const TaskMap& map,
                                        const EnergyLagrangian& leaf) {
  require_dim(leaf.dim, map.codomain_dim, "pullback_energy");
  const Spec pulled = pullback(map, leaf.spec());
  EnergyLagrangian out;
  out.name = leaf.name + "|" + map.name;
  out.dim = map.domain_dim;
  out.value = [map, leaf](const Vec& q, const Vec& qd) {
    return leaf.value(map.map(q), map.jacobian(q) * qd);
  };
  out.el_terms = [pulled](const Vec& q, const Vec& qd) {
    return std::make_pair(pulled.metric(q, qd), pulled.force(q, qd));
  };
  out.hamiltonian = [map, leaf](const Vec& q, const Vec& qd) {
    return leaf.hamiltonian(map.map(q), map.jacobian(q) * qd);
  };
  if (leaf.structure_value) {
    out.structure_value = [map, leaf](const Vec& q, const Vec& qd) {
      return leaf.structure_value(map.map(q), map.jacobian(q) * qd);
    };
  }
  return out;
}

// Sum of pulled-back leaf energies: the system energy of an assembled tree.
inline EnergyLagrangian sum_energies(
    const std::vector<EnergyLagrangian>& parts, int dim,
    std::string name = "sum") {
  if (parts.empty()) throw std::invalid_argument("sum_energies: empty list");
  for (const auto& p : parts) require_dim(p.dim, dim, "sum_energies");
  EnergyLagrangian out;
  out.name = std::move(name);
  out.dim = dim;
  out.value = [parts](const Vec& x, const Vec& xd) {
    double v = 0.0;
    for (const auto& p : parts) v += p.value(x, xd);
    return v;
  };
  out.el_terms = [parts, dim](const Vec& x, const Vec& xd) {
    Mat m = Mat::Zero(dim, dim);
    Vec f = Vec::Zero(dim);
    for (const auto& p : parts) {
      auto [mi, fi] = p.el_terms(x, xd);
      m += mi;
      f += fi;
    }
    return std::make_pair(m, f);
  };
  out.hamiltonian = [parts](const Vec& x, const Vec& xd) {
    double h = 0.0;
    for (const auto& p : parts) h += p.hamiltonian(x, xd);
    return h;
  };
  bool finsler = true;
  for (const auto& p : parts) finsler = finsler && p.is_finsler();
  if (finsler) {
    // Sum of Finsler energies: H = L still holds, so L_g = sqrt(2 sum L_i).
    auto value = out.value;
    out.structure_value = [value](const Vec& x, const Vec& xd) {
      return std::sqrt(std::max(0.0, 2.0 * value(x, xd)));
    };
  }
  return out;
}

}  // namespace fabrics
