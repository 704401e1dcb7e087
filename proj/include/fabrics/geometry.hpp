#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fabrics/energy.hpp"
#include "fabrics/spec.hpp"
#include "fabrics/task_map.hpp"
#include "fabrics/tree.hpp"

namespace fabrics {

using H2Fn = std::function<Vec(const Vec&, const Vec&)>;

// Acceleration policy xdd + h2(x, xd) = 0 with h2 positively homogeneous of
// degree 2 in velocity: solution paths are independent of traversal speed.
struct GeometryGenerator {
  std::string name;
  int dim = 0;
  H2Fn h2;

  Vec operator()(const Vec& x, const Vec& xd) const { return h2(x, xd); }
};

// The component of h2 entering the geometric equation
// P_perp[xdd + h2] = 0, with P_perp = I - vhat vhat^T.
inline Vec geometric_projection(const Vec& h2_value, const Vec& xd) {
  const double n = xd.norm();
  if (n == 0.0) {
    throw std::invalid_argument(
        "geometric_projection: undefined at zero velocity");
  }
  const Vec vhat = xd / n;
  return h2_value - vhat * vhat.dot(h2_value);
}

// A generator paired with the Finsler energy whose tensor weights it.
struct WeightedGeometry {
  GeometryGenerator generator;
  EnergyLagrangian priority;

  // Induced spec (M_e, M_e h2).
  Spec spec() const {
    return Spec{generator.dim,
                [p = priority](const Vec& x, const Vec& xd) {
                  return p.el_terms(x, xd).first;
                },
                [p = priority, g = generator](const Vec& x, const Vec& xd) {
                  return Vec(p.el_terms(x, xd).first * g.h2(x, xd));
                }};
  }
};

// The root system assembled from metric-weighted leaf geometries:
// root spec, the summed system energy, and the root generator
// h2 = M^{-1} sum_i J_i^T M_i (h2_i + Jdot_i qd).
struct FabricSystem {
  int dim = 0;
  Spec root_spec;
  EnergyLagrangian system_energy;
  GeometryGenerator root_generator;
  std::vector<EnergyLagrangian> energy_parts;  // pulled-back leaf energies
};

inline FabricSystem combine_weighted(
    const std::vector<std::pair<TaskMap, WeightedGeometry>>& leaves,
    int root_dim, double cond_cap = 1e12) {
  if (leaves.empty()) {
    throw std::invalid_argument("combine_weighted: empty list");
  }
  TransformTree tree{root_dim, {}};
  std::vector<EnergyLagrangian> parts;
  parts.reserve(leaves.size());
  for (const auto& [map, wg] : leaves) {
    require_dim(map.domain_dim, root_dim, "combine_weighted");
    tree.add_leaf(map, wg.spec());
    parts.push_back(pullback_energy(map, wg.priority));
  }

  FabricSystem sys;
  sys.dim = root_dim;
  sys.root_spec = tree_resolve(tree);
  sys.system_energy = sum_energies(parts, root_dim, "system");
  sys.energy_parts = std::move(parts);
  sys.root_generator =
      GeometryGenerator{"root", root_dim,
                        [spec = sys.root_spec, cond_cap](const Vec& q,
                                                         const Vec& qd) {
                          return Vec(solve_metric(spec.metric_at(q, qd),
                                                  spec.force_at(q, qd),
                                                  cond_cap));
                        }};
  return sys;
}

}  // namespace fabrics
