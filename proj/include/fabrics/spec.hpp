#pragma once

#include <functional>
#include <utility>

#include "fabrics/types.hpp"

namespace fabrics {

using MetricFn = std::function<Mat(const Vec&, const Vec&)>;
using ForceFn = std::function<Vec(const Vec&, const Vec&)>;
using AccelFn = std::function<Vec(const Vec&, const Vec&)>;

// A spec is the pair (M, f) of the second-order equation M xdd + f = 0.
// Immutable after construction; evaluation is pure.
struct Spec {
  int dim = 0;
  MetricFn metric;
  ForceFn force;

  Mat metric_at(const Vec& x, const Vec& xd) const {
    Mat m = metric(x, xd);
    if (!all_finite(m)) throw EvaluationError("non-finite metric", x, xd);
    return m;
  }
  Vec force_at(const Vec& x, const Vec& xd) const {
    Vec f = force(x, xd);
    if (!all_finite(f)) throw EvaluationError("non-finite force", x, xd);
    return f;
  }
};

// Canonical view (M, a) of the same equation, a = -M^{-1} f.
struct CanonicalSpec {
  int dim = 0;
  MetricFn metric;
  AccelFn acceleration;
};

inline Spec spec_sum(const Spec& a, const Spec& b) {
  require_dim(b.dim, a.dim, "spec_sum");
  return Spec{
      a.dim,
      [a, b](const Vec& x, const Vec& xd) {
        return Mat(a.metric(x, xd) + b.metric(x, xd));
      },
      [a, b](const Vec& x, const Vec& xd) {
        return Vec(a.force(x, xd) + b.force(x, xd));
      }};
}

inline CanonicalSpec to_canonical(const Spec& s, double cond_cap = 1e12) {
  return CanonicalSpec{
      s.dim, s.metric, [s, cond_cap](const Vec& x, const Vec& xd) {
        return Vec(-solve_metric(s.metric_at(x, xd), s.force_at(x, xd),
                                 cond_cap));
      }};
}

inline Spec from_canonical(const CanonicalSpec& c) {
  return Spec{c.dim, c.metric, [c](const Vec& x, const Vec& xd) {
                return Vec(-c.metric(x, xd) * c.acceleration(x, xd));
              }};
}

}  // namespace fabrics
