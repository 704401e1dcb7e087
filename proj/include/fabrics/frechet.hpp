#pragma once

#include <vector>

#include "fabrics/types.hpp"

namespace fabrics {

// Resample a polyline at n points equally spaced in arc length.
inline std::vector<Vec> arc_length_resample(const std::vector<Vec>& path,
                                            int n = 500) {
  if (path.empty()) throw std::invalid_argument("arc_length_resample: empty");
  if (path.size() == 1) return std::vector<Vec>(n, path.front());

  std::vector<double> cum(path.size(), 0.0);
  for (size_t i = 1; i < path.size(); ++i) {
    cum[i] = cum[i - 1] + (path[i] - path[i - 1]).norm();
  }
  const double total = cum.back();
  std::vector<Vec> out;
  out.reserve(n);
  if (total <= 0.0) return std::vector<Vec>(n, path.front());

  size_t seg = 0;
  for (int i = 0; i < n; ++i) {
    const double s = total * i / (n - 1);
    while (seg + 1 < cum.size() - 1 && cum[seg + 1] < s) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double u = len > 0.0 ? (s - cum[seg]) / len : 0.0;
    out.push_back(path[seg] + u * (path[seg + 1] - path[seg]));
  }
  return out;
}

// Discrete Frechet distance between two polylines (after the caller's
// resampling). Standard dynamic program on the coupling lattice.
inline double discrete_frechet(const std::vector<Vec>& a,
                               const std::vector<Vec>& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("discrete_frechet: empty path");
  }
  const size_t n = a.size(), m = b.size();
  std::vector<double> prev(m), cur(m);
  prev[0] = (a[0] - b[0]).norm();
  for (size_t j = 1; j < m; ++j) {
    prev[j] = std::max(prev[j - 1], (a[0] - b[j]).norm());
  }
  for (size_t i = 1; i < n; ++i) {
    cur[0] = std::max(prev[0], (a[i] - b[0]).norm());
    for (size_t j = 1; j < m; ++j) {
      const double reach = std::min({prev[j], prev[j - 1], cur[j - 1]});
      cur[j] = std::max(reach, (a[i] - b[j]).norm());
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

// Frechet distance after arc-length resampling to 500 points each.
inline double frechet_distance(const std::vector<Vec>& a,
                               const std::vector<Vec>& b, int samples = 500) {
  return discrete_frechet(arc_length_resample(a, samples),
                          arc_length_resample(b, samples));
}

}  // namespace fabrics
