#pragma once

#include <array>
#include <cmath>
#include <string>

#include "fabrics/task_map.hpp"

namespace fabrics {

// x = q - q_d on the root space; the attractor task map.
inline TaskMap offset_map(const Vec& target) {
  const int dim = static_cast<int>(target.size());
  return affine_map(Mat::Identity(dim, dim), Vec(-target), "offset");
}

// (r, theta) -> (r cos theta, r sin theta), r > 0.
inline TaskMap polar_map() {
  auto guard = [](const Vec& q) {
    if (!(q[0] > 0.0)) {
      throw std::invalid_argument("polar_map: r must be positive");
    }
  };
  return TaskMap{
      "polar",
      2,
      2,
      [guard](const Vec& q) {
        guard(q);
        Vec x(2);
        x << q[0] * std::cos(q[1]), q[0] * std::sin(q[1]);
        return x;
      },
      [guard](const Vec& q) {
        guard(q);
        Mat j(2, 2);
        j << std::cos(q[1]), -q[0] * std::sin(q[1]),  //
            std::sin(q[1]), q[0] * std::cos(q[1]);
        return j;
      },
      [guard](const Vec& q, const Vec& qd) {
        guard(q);
        const double c = std::cos(q[1]), s = std::sin(q[1]);
        const double rd = qd[0], thd = qd[1];
        Vec v(2);
        v[0] = -2.0 * rd * thd * s - q[0] * thd * thd * c;
        v[1] = 2.0 * rd * thd * c - q[0] * thd * thd * s;
        return v;
      }};
}

// 1-D distance task maps used by limit and obstacle components.
// upper limit: x = qbar - q_j ; lower limit: x = q_j - qunder.
inline TaskMap upper_limit_map(int root_dim, int joint, double upper) {
  Mat a = Mat::Zero(1, root_dim);
  a(0, joint) = -1.0;
  Vec b(1);
  b[0] = upper;
  return affine_map(a, b, "upper_limit[" + std::to_string(joint) + "]");
}

inline TaskMap lower_limit_map(int root_dim, int joint, double lower) {
  Mat a = Mat::Zero(1, root_dim);
  a(0, joint) = 1.0;
  Vec b(1);
  b[0] = -lower;
  return affine_map(a, b, "lower_limit[" + std::to_string(joint) + "]");
}

// x = ||q - c|| / r - 1. Rejected exactly at the center where the map is not
// differentiable.
inline TaskMap circle_distance_map(int root_dim, const Vec& center,
                                   double radius) {
  auto dist = [center](const Vec& q) {
    const double d = (q - center).norm();
    if (d < 1e-12) {
      throw std::invalid_argument(
          "circle_distance_map: evaluation at the circle center");
    }
    return d;
  };
  return TaskMap{
      "circle_distance",
      root_dim,
      1,
      [center, radius, dist](const Vec& q) {
        Vec x(1);
        x[0] = dist(q) / radius - 1.0;
        return x;
      },
      [center, radius, dist](const Vec& q) {
        const double d = dist(q);
        return Mat((q - center).transpose() / (radius * d));
      },
      [center, radius, dist](const Vec& q, const Vec& qd) {
        const Vec dv = q - center;
        const double d = dist(q);
        Vec c(1);
        c[0] = (qd.squaredNorm() * d * d - std::pow(dv.dot(qd), 2)) /
               (radius * d * d * d);
        return c;
      }};
}

// Height above the floor line n . x = offset (floor y = 0 with nhat = (0,1)
// by default).
inline TaskMap floor_height_map(const Vec& normal, double offset = 0.0) {
  Mat a(1, normal.size());
  a.row(0) = normal.transpose() / normal.norm();
  Vec b(1);
  b[0] = -offset;
  return affine_map(a, b, "floor_height");
}

// Signed horizontal distance between x and a goal, along the floor tangent.
inline TaskMap horizontal_goal_distance_map(const Vec& goal) {
  Mat a = Mat::Zero(1, goal.size());
  a(0, 0) = 1.0;
  Vec b(1);
  b[0] = -goal[0];
  return affine_map(a, b, "horizontal_goal_distance");
}

// 3-link planar arm. Angles are absolute sums of the joint coordinates; the
// end-effector map is the standard serial-chain FK with analytic Jacobian and
// curvature.
struct PlanarArm {
  std::array<double, 3> link_lengths{1.0, 1.0, 1.0};
  std::array<double, 3> lower_limits{-M_PI, -M_PI, -M_PI};
  std::array<double, 3> upper_limits{M_PI, M_PI, M_PI};
  Vec default_config = (Vec(3) << M_PI / 2.0, -M_PI / 4.0, -M_PI / 4.0).finished();

  Vec end_effector(const Vec& q) const {
    Vec p = Vec::Zero(2);
    double theta = 0.0;
    for (int i = 0; i < 3; ++i) {
      theta += q[i];
      p[0] += link_lengths[i] * std::cos(theta);
      p[1] += link_lengths[i] * std::sin(theta);
    }
    return p;
  }

  // Joint positions including the base, for plotting pose strips.
  std::array<Vec, 4> joint_positions(const Vec& q) const {
    std::array<Vec, 4> pts;
    pts[0] = Vec::Zero(2);
    double theta = 0.0;
    for (int i = 0; i < 3; ++i) {
      theta += q[i];
      pts[i + 1] = pts[i] + link_lengths[i] *
                                (Vec(2) << std::cos(theta), std::sin(theta))
                                    .finished();
    }
    return pts;
  }

  Mat jacobian(const Vec& q) const {
    Mat j = Mat::Zero(2, 3);
    double theta = 0.0;
    std::array<double, 3> angle;
    for (int i = 0; i < 3; ++i) {
      theta += q[i];
      angle[i] = theta;
    }
    for (int col = 0; col < 3; ++col) {
      for (int i = col; i < 3; ++i) {
        j(0, col) -= link_lengths[i] * std::sin(angle[i]);
        j(1, col) += link_lengths[i] * std::cos(angle[i]);
      }
    }
    return j;
  }

  // Jdot qd = sum_i l_i thetadot_i^2 (-cos, -sin), the centripetal term.
  Vec curvature(const Vec& q, const Vec& qd) const {
    Vec c = Vec::Zero(2);
    double theta = 0.0, thetad = 0.0;
    for (int i = 0; i < 3; ++i) {
      theta += q[i];
      thetad += qd[i];
      c[0] -= link_lengths[i] * thetad * thetad * std::cos(theta);
      c[1] -= link_lengths[i] * thetad * thetad * std::sin(theta);
    }
    return c;
  }

  TaskMap fk_map() const {
    return TaskMap{"arm_fk",
                   3,
                   2,
                   [a = *this](const Vec& q) { return a.end_effector(q); },
                   [a = *this](const Vec& q) { return a.jacobian(q); },
                   [a = *this](const Vec& q, const Vec& qd) {
                     return a.curvature(q, qd);
                   }};
  }
};

}  // namespace fabrics
