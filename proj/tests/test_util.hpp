#pragma once

#include <cstdint>
#include <vector>

#include "fabrics/energy.hpp"
#include "fabrics/spec.hpp"

namespace testutil {

using fabrics::EnergyLagrangian;
using fabrics::Mat;
using fabrics::Spec;
using fabrics::Vec;

// Deterministic generator; uniform doubles built directly from the raw
// 64-bit stream so sequences are stable across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * next01();
  }

  Vec vec(int dim, double lo = -1.0, double hi = 1.0) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  // Non-zero velocity away from switch boundaries.
  Vec velocity(int dim, double lo = 0.2, double hi = 2.0) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) {
      const double mag = uniform(lo, hi);
      v[i] = uniform() < 0.5 ? -mag : mag;
    }
    return v;
  }

  Mat spd(int dim, double ridge = 0.3) {
    Mat a(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a(i, j) = uniform(-1.0, 1.0);
    return Mat(a * a.transpose() + ridge * Mat::Identity(dim, dim));
  }

  bool coin() { return next01() < 0.5; }

 private:
  double next01() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

  std::uint64_t state_;
};

inline Spec constant_spec(const Mat& m, const Vec& f) {
  return Spec{static_cast<int>(f.size()),
              [m](const Vec&, const Vec&) { return m; },
              [f](const Vec&, const Vec&) { return f; }};
}

// Lagrangian wrapper exposing only the value, for finite-difference oracles.
inline EnergyLagrangian value_only_energy(int dim, fabrics::ScalarFn value) {
  EnergyLagrangian e;
  e.name = "value_only";
  e.dim = dim;
  e.value = std::move(value);
  return e;
}

}  // namespace testutil
