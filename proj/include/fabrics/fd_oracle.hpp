#pragma once

#include <utility>

#include "fabrics/energy.hpp"

namespace fabrics {

// Independent Euler-Lagrange oracle: (M_e, f_e) from central finite
// differences of the Lagrangian value alone. Never calls el_terms.
//
// First-derivative stencils use step 1e-6 (1 + ||.||); pure second-derivative
// stencils use 1e-4 (1 + ||.||), below which roundoff in the double-difference
// dominates the oracle tolerance.
inline std::pair<Mat, Vec> el_terms_fd_oracle(const EnergyLagrangian& energy,
                                              const Vec& x, const Vec& xd) {
  const int n = energy.dim;
  const double hx1 = 1e-6 * (1.0 + x.norm());
  const double hv2 = 1e-4 * (1.0 + xd.norm());
  const double hx2 = 1e-4 * (1.0 + x.norm());

  auto value = [&](const Vec& xx, const Vec& vv) {
    const double l = energy.value(xx, vv);
    if (!std::isfinite(l)) {
      throw EvaluationError("non-finite Lagrangian at oracle stencil", xx, vv);
    }
    return l;
  };

  const double l0 = value(x, xd);

  // M_e = d2L/dxd dxd
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    Vec vp = xd, vm = xd;
    vp[i] += hv2;
    vm[i] -= hv2;
    m(i, i) = (value(x, vp) - 2.0 * l0 + value(x, vm)) / (hv2 * hv2);
    for (int j = i + 1; j < n; ++j) {
      Vec vpp = xd, vpm = xd, vmp = xd, vmm = xd;
      vpp[i] += hv2; vpp[j] += hv2;
      vpm[i] += hv2; vpm[j] -= hv2;
      vmp[i] -= hv2; vmp[j] += hv2;
      vmm[i] -= hv2; vmm[j] -= hv2;
      m(i, j) = (value(x, vpp) - value(x, vpm) - value(x, vmp) +
                 value(x, vmm)) /
                (4.0 * hv2 * hv2);
      m(j, i) = m(i, j);
    }
  }

  // d2L/dxd dx, mixed stencil
  Mat dvx(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vec xp = x, xm = x;
      xp[j] += hx2;
      xm[j] -= hx2;
      Vec vp = xd, vm = xd;
      vp[i] += hv2;
      vm[i] -= hv2;
      dvx(i, j) = (value(xp, vp) - value(xp, vm) - value(xm, vp) +
                   value(xm, vm)) /
                  (4.0 * hx2 * hv2);
    }
  }

  // dL/dx
  Vec dx(n);
  for (int j = 0; j < n; ++j) {
    Vec xp = x, xm = x;
    xp[j] += hx1;
    xm[j] -= hx1;
    dx[j] = (value(xp, xd) - value(xm, xd)) / (2.0 * hx1);
  }

  return {m, Vec(dvx * xd - dx)};
}

// dL/dxd by central differences; used by Hamiltonian and homogeneity checks.
inline Vec velocity_gradient_fd(const EnergyLagrangian& energy, const Vec& x,
                                const Vec& xd) {
  const int n = energy.dim;
  const double h = 1e-6 * (1.0 + xd.norm());
  Vec g(n);
  for (int i = 0; i < n; ++i) {
    Vec vp = xd, vm = xd;
    vp[i] += h;
    vm[i] -= h;
    g[i] = (energy.value(x, vp) - energy.value(x, vm)) / (2.0 * h);
  }
  return g;
}

}  // namespace fabrics
