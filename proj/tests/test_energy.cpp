#include "fabrics/energy.hpp"

#include <gtest/gtest.h>

#include "fabrics/energy_catalog.hpp"
#include "fabrics/fd_oracle.hpp"
#include "fabrics/kinematics.hpp"
#include "test_util.hpp"

using fabrics::EnergyLagrangian;
using fabrics::EnergyParams;
using fabrics::Mat;
using fabrics::Vec;
using testutil::Rng;

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

struct Catalogued {
  EnergyLagrangian energy;
  // Sampler producing interior states away from switch boundaries.
  std::function<std::pair<Vec, Vec>(Rng&)> sample;
  bool finsler_positive = true;  // proper Finsler on the sampled branch
};

std::vector<Catalogued> catalogue() {
  std::vector<Catalogued> out;
  EnergyParams p;

  p.dim = 2;
  p.scale = 1.3;
  out.push_back({fabrics::make_builtin_energy("euclidean", p),
                 [](Rng& r) {
                   return std::make_pair(r.vec(2, -2, 2), r.velocity(2));
                 }});

  EnergyParams pb;
  pb.scale = 0.25;
  out.push_back({fabrics::make_builtin_energy("barrier_scaled", pb),
                 [](Rng& r) {
                   // approaching branch (xd < 0), away from the switch
                   return std::make_pair(v1(r.uniform(0.3, 3.0)),
                                         v1(-r.uniform(0.2, 2.0)));
                 }});

  EnergyParams pc;
  pc.dim = 2;
  pc.k = 0.5;
  pc.radius = 1.0;
  pc.center = v2(0, 0);
  out.push_back({fabrics::make_builtin_energy("chomp_like", pc),
                 [](Rng& r) {
                   Vec q = r.vec(2, -4, 4);
                   while (q.norm() < 1.6) q = r.vec(2, -4, 4);
                   return std::make_pair(q, r.velocity(2));
                 }});

  out.push_back({fabrics::make_builtin_energy("directional", {}),
                 [](Rng& r) {
                   return std::make_pair(v1(r.uniform(0.4, 3.0)),
                                         v1(r.uniform(-2.0, 2.0)));
                 }});

  EnergyParams pr;
  pr.dim = 2;
  pr.m_upper = 1.0;
  pr.m_lower = 0.1;
  pr.alpha = 2.0;
  pr.radius = 1.5;
  out.push_back({fabrics::make_builtin_energy("radial_switch", pr),
                 [](Rng& r) {
                   return std::make_pair(r.vec(2, -3, 3), r.velocity(2));
                 }});

  EnergyParams pv;
  pv.dim = 2;
  pv.scale = 1.0;
  pv.radius = 1.0;
  pv.center = v2(0.5, -0.25);
  out.push_back({fabrics::make_builtin_energy("vortex_zone", pv),
                 [pv](Rng& r) {
                   // inside the zone but not at the center
                   Vec q = pv.center + r.vec(2, -0.6, 0.6);
                   while ((q - pv.center).norm() < 0.15 ||
                          (q - pv.center).norm() > 0.85) {
                     q = pv.center + r.vec(2, -0.6, 0.6);
                   }
                   return std::make_pair(q, r.velocity(2));
                 },
                 false});

  EnergyParams pp;
  pp.dim = 2;
  pp.m_upper = 2.0;
  pp.m_lower = 0.3;
  pp.alpha = 0.75;
  out.push_back({fabrics::make_builtin_energy("priority_radial", pp),
                 [](Rng& r) {
                   return std::make_pair(r.vec(2, -3, 3), r.velocity(2));
                 }});
  return out;
}

TEST(EnergyCatalog, EuclideanSpotValues) {
  EnergyParams p;
  p.dim = 2;
  p.scale = 1.0;
  const auto e = fabrics::make_builtin_energy("euclidean", p);
  const Vec x = v2(0.4, -2.0), xd = v2(1, 0);
  EXPECT_DOUBLE_EQ(e.value(x, xd), 0.5);
  auto [m, f] = e.el_terms(x, xd);
  EXPECT_TRUE(m.isApprox(Mat::Identity(2, 2)));
  EXPECT_DOUBLE_EQ(f.norm(), 0.0);
}

TEST(EnergyCatalog, BarrierScaledSpotValues) {
  EnergyParams p;
  p.scale = 0.25;
  const auto e = fabrics::make_builtin_energy("barrier_scaled", p);
  auto [m, f] = e.el_terms(v1(0.5), v1(-1.0));  // moving toward the limit
  EXPECT_DOUBLE_EQ(m(0, 0), 0.5);
  auto [m0, f0] = e.el_terms(v1(0.5), v1(1.0));  // moving away
  EXPECT_DOUBLE_EQ(m0(0, 0), 0.0);
}

TEST(EnergyCatalog, AttractorMetricVanishesFarAway) {
  EnergyParams p;
  p.dim = 2;
  p.m_upper = 1.0;
  p.m_lower = 0.0;
  p.alpha = 25.0;
  p.radius = 5.0;
  const auto e = fabrics::make_builtin_energy("radial_switch", p);
  const auto m = e.el_terms(v2(40.0, 0.0), v2(1, 1)).first;
  EXPECT_LT(m.norm(), 1e-12);
  const auto near = e.el_terms(v2(0.1, 0.0), v2(1, 1)).first;
  EXPECT_NEAR(near(0, 0), 2.0 * 1.0, 1e-9);  // tensor of xd^T G xd is 2 G
}

TEST(EnergyCatalog, UnknownKindAndBadParamsRejected) {
  EXPECT_THROW(fabrics::make_builtin_energy("nope", {}), std::invalid_argument);
  EnergyParams p;
  p.scale = -1.0;
  EXPECT_THROW(fabrics::make_builtin_energy("euclidean", p),
               std::invalid_argument);
}

// Analytic Euler-Lagrange terms match the independent finite-difference
// oracle for every catalogued energy.
TEST(EnergyCatalog, ElTermsMatchFdOracle) {
  Rng rng(21);
  for (const auto& c : catalogue()) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto [x, xd] = c.sample(rng);
      const auto [m, f] = c.energy.el_terms(x, xd);
      const auto [mo, fo] = fabrics::el_terms_fd_oracle(c.energy, x, xd);
      const double mtol = std::max(1e-5, 1e-4 * mo.norm());
      const double ftol = std::max(1e-5, 1e-4 * fo.norm());
      EXPECT_LT((m - mo).norm(), mtol) << c.energy.name << " trial " << trial;
      EXPECT_LT((f - fo).norm(), ftol) << c.energy.name << " trial " << trial;
    }
  }
}

// H_e = dL/dxd . xd - L against a finite-difference velocity gradient.
TEST(EnergyCatalog, HamiltonianMatchesLegendreForm) {
  Rng rng(22);
  for (const auto& c : catalogue()) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto [x, xd] = c.sample(rng);
      const Vec g = fabrics::velocity_gradient_fd(c.energy, x, xd);
      const double expected = g.dot(xd) - c.energy.value(x, xd);
      EXPECT_NEAR(c.energy.hamiltonian(x, xd), expected,
                  1e-8 * (1.0 + std::abs(expected)))
          << c.energy.name;
    }
  }
}

// Finsler properties: degree-2 homogeneity of the value, H = L, degree-0
// homogeneity of M_e, degree-2 homogeneity of f_e, and Euler's theorem.
TEST(EnergyCatalog, FinslerHomogeneitySuite) {
  Rng rng(23);
  const double alphas[] = {0.5, 2.0, 3.7};
  for (const auto& c : catalogue()) {
    ASSERT_TRUE(c.energy.is_finsler()) << c.energy.name;
    for (int trial = 0; trial < 100; ++trial) {
      const auto [x, xd] = c.sample(rng);
      const double l = c.energy.value(x, xd);
      const auto [m, f] = c.energy.el_terms(x, xd);
      for (double a : alphas) {
        const Vec axd = a * xd;
        EXPECT_NEAR(c.energy.value(x, axd), a * a * l,
                    1e-9 * (1.0 + a * a * std::abs(l)))
            << c.energy.name;
        const auto [ma, fa] = c.energy.el_terms(x, axd);
        EXPECT_LT((ma - m).norm(), 1e-9 * (1.0 + m.norm())) << c.energy.name;
        EXPECT_LT((fa - a * a * f).norm(), 1e-8 * (1.0 + a * a * f.norm()))
            << c.energy.name;
      }
      EXPECT_NEAR(c.energy.hamiltonian(x, xd), l, 1e-9 * (1.0 + std::abs(l)))
          << c.energy.name;
      // Euler: dL/dxd . xd = 2 L
      const Vec g = fabrics::velocity_gradient_fd(c.energy, x, xd);
      EXPECT_NEAR(g.dot(xd), 2.0 * l, 1e-7 * (1.0 + std::abs(l)))
          << c.energy.name;
      // structure value L_g = sqrt(2 L_e)
      EXPECT_NEAR(c.energy.structure_value(x, xd),
                  std::sqrt(std::max(0.0, 2.0 * l)), 1e-9 * (1.0 + l))
          << c.energy.name;
    }
  }
}

TEST(HamiltonianRate, EnergySystemConservesExactly) {
  Rng rng(24);
  EnergyParams p;
  p.dim = 2;
  p.m_upper = 2.0;
  p.m_lower = 0.3;
  p.alpha = 0.75;
  const auto e = fabrics::make_builtin_energy("priority_radial", p);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec x = rng.vec(2, -2, 2), xd = rng.velocity(2);
    auto [m, f] = e.el_terms(x, xd);
    const Vec xdd = -m.ldlt().solve(f);
    EXPECT_NEAR(fabrics::hamiltonian_rate(e, x, xd, xdd), 0.0, 1e-12);
  }
}

TEST(HamiltonianRate, DampedSystemDissipatesAtVelocityQuadraticRate) {
  Rng rng(25);
  EnergyParams p;
  p.dim = 3;
  p.scale = 2.0;
  const auto e = fabrics::make_builtin_energy("euclidean", p);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec x = rng.vec(3), xd = rng.velocity(3);
    const Mat b = rng.spd(3);
    auto [m, f] = e.el_terms(x, xd);
    const Vec xdd = -m.ldlt().solve(f + b * xd);
    EXPECT_NEAR(fabrics::hamiltonian_rate(e, x, xd, xdd), -xd.dot(b * xd),
                1e-10 * (1.0 + xd.dot(b * xd)));
  }
}

TEST(HamiltonianRate, ZeroVelocityGivesZero) {
  EnergyParams p;
  p.dim = 2;
  p.scale = 1.0;
  const auto e = fabrics::make_builtin_energy("euclidean", p);
  EXPECT_DOUBLE_EQ(
      fabrics::hamiltonian_rate(e, v2(1, 1), v2(0, 0), v2(3, -4)), 0.0);
}

TEST(FdOracle, BarrierBelowFloorRaises) {
  EnergyParams p;
  p.scale = 0.25;
  const auto e = fabrics::make_builtin_energy("barrier_scaled", p);
  EXPECT_THROW(fabrics::el_terms_fd_oracle(e, v1(1e-12), v1(-1.0)),
               fabrics::EvaluationError);
}

// Pullback of the directional energy through the circle distance map matches
// the finite-difference oracle of the composed Lagrangian.
TEST(EnergyPullback, ComposedDirectionalEnergy) {
  const auto leaf = fabrics::make_builtin_energy("directional", {});
  const auto map = fabrics::circle_distance_map(2, v2(0, 0), 1.0);
  const auto pulled = fabrics::pullback_energy(map, leaf);

  const auto composed = testutil::value_only_energy(
      2, [map, leaf](const Vec& q, const Vec& qd) {
        return leaf.value(map.map(q), map.jacobian(q) * qd);
      });
  Rng rng(26);
  for (int trial = 0; trial < 100; ++trial) {
    Vec q = rng.vec(2, -4, 4);
    while (q.norm() < 1.7) q = rng.vec(2, -4, 4);
    const Vec qd = rng.velocity(2);
    const auto [m, f] = pulled.el_terms(q, qd);
    const auto [mo, fo] = fabrics::el_terms_fd_oracle(composed, q, qd);
    EXPECT_LT((m - mo).norm(), std::max(1e-5, 1e-4 * mo.norm()));
    EXPECT_LT((f - fo).norm(), std::max(1e-5, 1e-4 * fo.norm()));
  }
}

TEST(EnergySum, SumsValuesTermsAndHamiltonians) {
  Rng rng(27);
  EnergyParams p1;
  p1.dim = 2;
  p1.scale = 1.0;
  EnergyParams p2;
  p2.dim = 2;
  p2.m_upper = 2.0;
  p2.m_lower = 0.3;
  p2.alpha = 0.75;
  const auto a = fabrics::make_builtin_energy("euclidean", p1);
  const auto b = fabrics::make_builtin_energy("priority_radial", p2);
  const auto sum = fabrics::sum_energies({a, b}, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec x = rng.vec(2), xd = rng.velocity(2);
    EXPECT_NEAR(sum.value(x, xd), a.value(x, xd) + b.value(x, xd), 1e-14);
    EXPECT_NEAR(sum.hamiltonian(x, xd),
                a.hamiltonian(x, xd) + b.hamiltonian(x, xd), 1e-14);
    const auto [m, f] = sum.el_terms(x, xd);
    const auto [ma, fa] = a.el_terms(x, xd);
    const auto [mb, fb] = b.el_terms(x, xd);
    EXPECT_TRUE(m.isApprox(Mat(ma + mb)));
    EXPECT_TRUE(f.isApprox(Vec(fa + fb)));
  }
}

}  // namespace
