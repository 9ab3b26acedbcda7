// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Independent oracles and generators shared by the unit and acceptance
// suites. Nothing here calls into the library's statics code.

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "stretchstab/robot_model.hpp"

namespace stretchstab::testing {

// Fixed seeds: every run sees the same samples.
inline std::mt19937_64 make_rng(std::uint64_t salt = 0) {
  return std::mt19937_64(0x5eed5eedULL ^ (salt * 0x9e3779b97f4a7c15ULL));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Valid lumped-COM spec with dimensions around a small home robot.
inline RobotSpec random_spec(std::mt19937_64& rng) {
  RobotSpec s;
  s.name = "random";
  s.robot_mass = uniform(rng, 5.0, 80.0);
  s.gravity = uniform(rng, 9.7, 9.9);
  s.track_width = uniform(rng, 0.15, 0.8);
  s.base_length = uniform(rng, 0.1, 0.6);
  s.com_offset = s.base_length * uniform(rng, 0.05, 0.95);
  s.arm_setback = uniform(rng, 0.0, 0.05);
  s.max_reach = uniform(rng, 0.2, 1.5);
  s.max_height = uniform(rng, 0.5, 2.0);
  s.segment_count = static_cast<int>(uniform(rng, 1.0, 6.999));
  return s;
}

// Support-triangle geometry written the long way round: perpendicular COM
// distance to a side (c sin alpha) over the payload's perpendicular distance
// beyond it ((d_p + t / tan beta) cos alpha).
inline double oracle_triangle_payload(const RobotSpec& s, double reach) {
  const double alpha = std::atan(s.track_width / (2.0 * s.base_length));
  const double beta = M_PI / 2.0 - alpha;
  const double com_arm = s.com_offset * std::sin(alpha);
  const double payload_arm = (reach + s.arm_setback / std::tan(beta)) * std::cos(alpha);
  return s.robot_mass * com_arm / payload_arm;
}

// Only F cos(alpha) acts across a side; its lever is the height.
inline double oracle_triangle_pull(const RobotSpec& s, double h) {
  const double alpha = std::atan(s.track_width / (2.0 * s.base_length));
  const double com_arm = s.com_offset * std::sin(alpha);
  return s.robot_mass * s.gravity * com_arm / (h * std::cos(alpha));
}

inline double oracle_backpush(const RobotSpec& s, double h) {
  return s.robot_mass * s.gravity * (s.base_length - s.com_offset) / h;
}

struct PointForce {
  Eigen::Vector3d point;
  Eigen::Vector3d force;
};

// Restoring moment about the directed edge a -> b (floor plane, interior on
// the left): minus the component along the edge of the summed torques
// r x F taken about a.
inline double oracle_edge_moment(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                 const std::vector<PointForce>& forces) {
  const Eigen::Vector3d origin(a.x(), a.y(), 0.0);
  const Eigen::Vector3d axis = Eigen::Vector3d(b.x() - a.x(), b.y() - a.y(), 0.0).normalized();
  Eigen::Vector3d torque = Eigen::Vector3d::Zero();
  for (const auto& pf : forces) torque += (pf.point - origin).cross(pf.force);
  return -axis.dot(torque);
}

// Random convex polygon: sorted angles on a jittered ellipse, counterclockwise.
inline std::vector<Eigen::Vector2d> random_convex_polygon(std::mt19937_64& rng, int n) {
  std::vector<double> angles;
  for (int i = 0; i < n; ++i) angles.push_back(2.0 * M_PI * (i + uniform(rng, 0.1, 0.9)) / n);
  const double rx = uniform(rng, 0.2, 1.0);
  const double ry = uniform(rng, 0.2, 1.0);
  const Eigen::Vector2d center(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
  std::vector<Eigen::Vector2d> pts;
  for (double a : angles) pts.push_back(center + Eigen::Vector2d(rx * std::cos(a), ry * std::sin(a)));
  return pts;
}

// Brute-force reference for one-variable design problems. Metrics come from
// the oracles above; a point outside the workspace has no capability.
struct GridProblem {
  RobotSpec base;
  std::string variable;  // design variable on the grid
  std::string objective; // the variable itself, or "payload" (maximized)
  bool minimize = true;
  struct Bound {
    std::string metric;  // payload | pull | push | backpush
    std::optional<double> height;
    double at_least = 0.0;
  };
  std::vector<Bound> bounds;
  double lo = 0.0;
  double hi = 0.0;
};

inline double& field_ref(RobotSpec& s, const std::string& v) {
  if (v == "m_r") return s.robot_mass;
  if (v == "w") return s.track_width;
  if (v == "l") return s.base_length;
  if (v == "c") return s.com_offset;
  if (v == "t") return s.arm_setback;
  return s.max_reach;  // "D"
}

inline bool oracle_valid(const RobotSpec& s) {
  return s.robot_mass > 0 && s.track_width > 0 && s.base_length > 0 && s.com_offset > 0 &&
         s.com_offset < s.base_length && s.arm_setback >= 0 && s.max_reach > 0;
}

inline double oracle_metric(const RobotSpec& s, const std::string& metric, std::optional<double> h) {
  if (metric == "payload") return oracle_triangle_payload(s, s.max_reach);
  if (*h > s.max_height) return 0.0;
  if (metric == "backpush") return oracle_backpush(s, *h);
  return oracle_triangle_pull(s, *h);
}

struct GridAnswer {
  bool feasible = false;
  double best_x = 0.0;
  double cell = 0.0;
};

inline GridAnswer brute_force(const GridProblem& p, int cells = 10000) {
  GridAnswer ans;
  ans.cell = (p.hi - p.lo) / cells;
  double best_score = 0.0;
  for (int i = 0; i <= cells; ++i) {
    RobotSpec s = p.base;
    const double x = p.lo + ans.cell * i;
    field_ref(s, p.variable) = x;
    if (!oracle_valid(s)) continue;
    bool ok = true;
    for (const auto& b : p.bounds) ok = ok && oracle_metric(s, b.metric, b.height) >= b.at_least;
    if (!ok) continue;
    const double value = p.objective == "payload" ? oracle_triangle_payload(s, s.max_reach) : x;
    const double score = p.minimize ? -value : value;
    if (!ans.feasible || score > best_score) {
      ans.feasible = true;
      best_score = score;
      ans.best_x = x;
    }
  }
  return ans;
}

// Random solvable one-variable problem around a random spec: each bound is a
// fraction of the template's own capability, so the template is feasible.
inline GridProblem random_grid_problem(std::mt19937_64& rng) {
  static const char* const kVars[] = {"D", "c", "l", "m_r", "t", "w"};
  static const char* const kMetrics[] = {"payload", "pull", "push", "backpush"};
  GridProblem p;
  p.base = random_spec(rng);
  const int pick = static_cast<int>(uniform(rng, 0.0, 5.999));
  p.variable = kVars[pick];
  if (p.variable == "m_r" || p.variable == "w" || p.variable == "l") {
    p.objective = p.variable;
    p.minimize = true;
  } else if (p.variable == "D" && uniform(rng, 0, 1) < 0.5) {
    p.objective = "D";
    p.minimize = false;
  } else {
    p.objective = "payload";
    p.minimize = false;
  }
  const int count = 1 + static_cast<int>(uniform(rng, 0.0, 1.999));
  for (int k = 0; k < count; ++k) {
    GridProblem::Bound b;
    b.metric = kMetrics[static_cast<int>(uniform(rng, 0.0, 3.999))];
    if (b.metric != "payload") b.height = uniform(rng, 0.1, p.base.max_height);
    b.at_least = uniform(rng, 0.3, 0.95) * oracle_metric(p.base, b.metric, b.height);
    p.bounds.push_back(b);
  }
  const double x0 = field_ref(p.base, p.variable);
  p.lo = 0.1 * x0;
  p.hi = 10.0 * x0;
  return p;
}

}  // namespace stretchstab::testing
