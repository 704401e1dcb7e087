#pragma once

#include <functional>
#include <string>
#include <utility>

#include "fabrics/types.hpp"

namespace fabrics {

using MapFn = std::function<Vec(const Vec&)>;
using JacobianFn = std::function<Mat(const Vec&)>;
using CurvatureFn = std::function<Vec(const Vec&, const Vec&)>;

// Differentiable map phi: Q -> X with Jacobian J and curvature term Jdot qd.
// Edges of the transform tree.
struct TaskMap {
  std::string name;
  int domain_dim = 0;
  int codomain_dim = 0;
  MapFn map;
  JacobianFn jacobian;
  CurvatureFn curvature;  // (q, qd) -> Jdot(q, qd) qd

  Vec operator()(const Vec& q) const { return map(q); }
};

inline TaskMap identity_map(int dim) {
  return TaskMap{"identity",
                 dim,
                 dim,
                 [](const Vec& q) { return q; },
                 [dim](const Vec&) { return Mat(Mat::Identity(dim, dim)); },
                 [dim](const Vec&, const Vec&) { return Vec(Vec::Zero(dim)); }};
}

// x = A q + b (constant Jacobian, zero curvature)
inline TaskMap affine_map(const Mat& a, const Vec& b,
                          std::string name = "affine") {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  return TaskMap{std::move(name),
                 cols,
                 rows,
                 [a, b](const Vec& q) { return Vec(a * q + b); },
                 [a](const Vec&) { return a; },
                 [rows](const Vec&, const Vec&) {
                   return Vec(Vec::Zero(rows));
                 }};
}

// Composition outer(inner(q)). The curvature splits into the outer curvature
// along the inner image plus the transported inner curvature.
inline TaskMap compose(const TaskMap& outer, const TaskMap& inner) {
  require_dim(outer.domain_dim, inner.codomain_dim, "compose");
  return TaskMap{
      outer.name + "\xe2\x88\x98" + inner.name,
      inner.domain_dim,
      outer.codomain_dim,
      [outer, inner](const Vec& q) { return outer.map(inner.map(q)); },
      [outer, inner](const Vec& q) {
        const Vec y = inner.map(q);
        return Mat(outer.jacobian(y) * inner.jacobian(q));
      },
      [outer, inner](const Vec& q, const Vec& qd) {
        const Vec y = inner.map(q);
        const Vec yd = inner.jacobian(q) * qd;
        return Vec(outer.curvature(y, yd) +
                   outer.jacobian(y) * inner.curvature(q, qd));
      }};
}

// Curvature oracle: central differences of the map's own Jacobian,
// contracted twice with qd.
inline Vec fd_curvature(const TaskMap& map, const Vec& q, const Vec& qd) {
  const double h = 1e-6 * (1.0 + q.norm());
  Mat dj = Mat::Zero(map.codomain_dim, map.domain_dim);
  for (int i = 0; i < map.domain_dim; ++i) {
    Vec qp = q, qm = q;
    qp[i] += h;
    qm[i] -= h;
    dj += (map.jacobian(qp) - map.jacobian(qm)) / (2.0 * h) * qd[i];
  }
  return dj * qd;
}

// Central-difference TaskMap adapter for user maps and for oracle tests.
// Step 1e-6 (1 + ||q||), per coordinate.
inline TaskMap make_fd_task_map(MapFn map, int domain_dim, int codomain_dim,
                                std::string name = "fd") {
  auto jac = [map, domain_dim, codomain_dim](const Vec& q) {
    const double h = 1e-6 * (1.0 + q.norm());
    Mat j(codomain_dim, domain_dim);
    for (int i = 0; i < domain_dim; ++i) {
      Vec qp = q, qm = q;
      qp[i] += h;
      qm[i] -= h;
      j.col(i) = (map(qp) - map(qm)) / (2.0 * h);
    }
    return j;
  };
  auto curv = [jac, domain_dim](const Vec& q, const Vec& qd) {
    const double h = 1e-6 * (1.0 + q.norm());
    // Jdot qd = (d/dt J) qd, differentiating J along qd.
    Mat dj = Mat::Zero(jac(q).rows(), domain_dim);
    for (int i = 0; i < domain_dim; ++i) {
      Vec qp = q, qm = q;
      qp[i] += h;
      qm[i] -= h;
      dj += (jac(qp) - jac(qm)) / (2.0 * h) * qd[i];
    }
    return Vec(dj * qd);
  };
  return TaskMap{std::move(name), domain_dim, codomain_dim,
                 std::move(map),  jac,        curv};
}

}  // namespace fabrics
