#pragma once

#include <utility>
#include <vector>

#include "fabrics/spec.hpp"
#include "fabrics/task_map.hpp"

namespace fabrics {

// Covariant pullback of a spec through a task map:
//   metric: J^T M J
//   force:  J^T (f + M Jdot qd)
// The metric multiplies the curvature term; this is the force form under
// which energization commutes with pullback and Euler-Lagrange pullback is
// exact.
inline Spec pullback(const TaskMap& map, const Spec& s) {
  require_dim(s.dim, map.codomain_dim, "pullback");
  return Spec{
      map.domain_dim,
      [map, s](const Vec& q, const Vec& qd) {
        const Vec x = map.map(q);
        const Mat j = map.jacobian(q);
        return Mat(j.transpose() * s.metric_at(x, j * qd) * j);
      },
      [map, s](const Vec& q, const Vec& qd) {
        const Vec x = map.map(q);
        const Mat j = map.jacobian(q);
        const Vec xd = j * qd;
        return Vec(j.transpose() *
                   (s.force_at(x, xd) +
                    s.metric_at(x, xd) * map.curvature(q, qd)));
      }};
}

// Star-shaped transform tree: every leaf hangs off the root by one map.
struct TransformTree {
  int root_dim = 0;
  std::vector<std::pair<TaskMap, Spec>> leaves;

  void add_leaf(TaskMap map, Spec spec) {
    require_dim(map.domain_dim, root_dim, "TransformTree::add_leaf");
    require_dim(spec.dim, map.codomain_dim, "TransformTree::add_leaf");
    leaves.emplace_back(std::move(map), std::move(spec));
  }
};

// Pull every leaf back and sum at the root, in leaf order.
inline Spec tree_resolve(const TransformTree& tree) {
  if (tree.leaves.empty()) {
    throw std::invalid_argument("tree_resolve: empty tree");
  }
  Spec root = pullback(tree.leaves[0].first, tree.leaves[0].second);
  for (size_t i = 1; i < tree.leaves.size(); ++i) {
    root = spec_sum(root, pullback(tree.leaves[i].first, tree.leaves[i].second));
  }
  return root;
}

}  // namespace fabrics
