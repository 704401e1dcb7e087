#include "fabrics/kinematics.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

using fabrics::PlanarArm;
using fabrics::TaskMap;
using fabrics::Vec;
using testutil::Rng;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

TEST(PlanarArmFk, StretchedAndUprightPoses) {
  PlanarArm arm;
  EXPECT_TRUE(arm.end_effector(v3(0, 0, 0)).isApprox(v2(3, 0), 1e-12));
  EXPECT_LT((arm.end_effector(v3(M_PI / 2, 0, 0)) - v2(0, 3)).norm(), 1e-12);
}

TEST(PlanarArmFk, AngleWrapConsistency) {
  PlanarArm arm;
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec q = rng.vec(3, -3, 3);
    for (int j = 0; j < 3; ++j) {
      Vec qw = q;
      qw[j] += 2.0 * M_PI;
      EXPECT_LT((arm.end_effector(q) - arm.end_effector(qw)).norm(), 1e-12);
    }
  }
}

TEST(PlanarArmFk, JacobianAndCurvatureMatchFiniteDifferences) {
  PlanarArm arm;
  arm.link_lengths = {0.8, 1.1, 0.6};
  const TaskMap fk = arm.fk_map();
  const TaskMap fd = fabrics::make_fd_task_map(fk.map, 3, 2);
  Rng rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec q = rng.vec(3, -2.5, 2.5);
    const Vec qd = rng.vec(3, -2, 2);
    EXPECT_LT((fk.jacobian(q) - fd.jacobian(q)).norm(), 1e-6);
    EXPECT_LT((fk.curvature(q, qd) - fabrics::fd_curvature(fk, q, qd)).norm(),
              1e-5 * (1.0 + fk.curvature(q, qd).norm()));
  }
}

TEST(DistanceMaps, SpotValues) {
  const auto upper = fabrics::upper_limit_map(2, 0, 4.0);
  EXPECT_DOUBLE_EQ(upper.map(v2(1.0, 0.0))[0], 3.0);

  const auto lower = fabrics::lower_limit_map(2, 1, -4.0);
  EXPECT_DOUBLE_EQ(lower.map(v2(0.0, -1.0))[0], 3.0);

  const auto circle = fabrics::circle_distance_map(2, v2(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(circle.map(v2(2, 0))[0], 1.0);

  const auto floor = fabrics::floor_height_map(v2(0, 1));
  EXPECT_DOUBLE_EQ(floor.map(v2(0.3, 0.7))[0], 0.7);
}

TEST(DistanceMaps, CircleCenterRejected) {
  const auto circle = fabrics::circle_distance_map(2, v2(1, 1), 0.5);
  EXPECT_THROW(circle.map(v2(1, 1)), std::invalid_argument);
}

TEST(DistanceMaps, JacobiansMatchFiniteDifferences) {
  Rng rng(63);
  const std::vector<TaskMap> maps = {
      fabrics::upper_limit_map(2, 0, 4.0),
      fabrics::lower_limit_map(2, 1, -4.0),
      fabrics::circle_distance_map(2, v2(0.2, -0.3), 1.0),
      fabrics::floor_height_map(v2(0, 1)),
      fabrics::horizontal_goal_distance_map(v2(1.5, 0.0)),
  };
  for (const auto& m : maps) {
    const TaskMap fd = fabrics::make_fd_task_map(m.map, m.domain_dim,
                                                 m.codomain_dim);
    for (int trial = 0; trial < 50; ++trial) {
      Vec q = rng.vec(2, -4, 4);
      if (m.name == "circle_distance" && (q - v2(0.2, -0.3)).norm() < 1.3) {
        continue;
      }
      const Vec qd = rng.vec(2, -2, 2);
      EXPECT_LT((m.jacobian(q) - fd.jacobian(q)).norm(), 1e-5) << m.name;
      EXPECT_LT((m.curvature(q, qd) - fabrics::fd_curvature(m, q, qd)).norm(),
                1e-5 * (1.0 + m.curvature(q, qd).norm()))
          << m.name;
    }
  }
}

TEST(PolarMap, SpotValuesAndJacobianDeterminant) {
  const auto polar = fabrics::polar_map();
  EXPECT_TRUE(polar.map(v2(1, 0)).isApprox(v2(1, 0)));
  EXPECT_LT((polar.map(v2(2, M_PI / 2)) - v2(0, 2)).norm(), 1e-12);
  EXPECT_THROW(polar.map(v2(-0.5, 0)), std::invalid_argument);
  EXPECT_THROW(polar.map(v2(0.0, 1.0)), std::invalid_argument);

  Rng rng(64);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec q = v2(rng.uniform(0.2, 5.0), rng.uniform(-3.0, 3.0));
    EXPECT_NEAR(polar.jacobian(q).determinant(), q[0], 1e-10);
  }
}

TEST(PolarMap, CurvatureMatchesFiniteDifferences) {
  const auto polar = fabrics::polar_map();
  Rng rng(65);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec q = v2(rng.uniform(0.3, 4.0), rng.uniform(-3.0, 3.0));
    const Vec qd = rng.vec(2, -2, 2);
    EXPECT_LT(
        (polar.curvature(q, qd) - fabrics::fd_curvature(polar, q, qd)).norm(),
        1e-5);
  }
}

// 2n limit maps cover an n-dim space.
TEST(DistanceMaps, LimitFamilyCoversBothSides) {
  const int n = 3;
  std::vector<TaskMap> maps;
  for (int j = 0; j < n; ++j) {
    maps.push_back(fabrics::upper_limit_map(n, j, 4.0));
    maps.push_back(fabrics::lower_limit_map(n, j, -4.0));
  }
  EXPECT_EQ(maps.size(), 2u * n);
  const Vec q = v3(0.5, -1.0, 3.0);
  for (const auto& m : maps) EXPECT_GT(m.map(q)[0], 0.0);
}

}  // namespace
