// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "stretchstab/robot_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stretchstab/error.hpp"

namespace stretchstab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kInvalidSpec: return "invalid spec";
    case ErrorCode::kOutOfLimits: return "out of joint limits";
    case ErrorCode::kOutOfWorkspace: return "out of workspace";
    case ErrorCode::kUnbounded: return "unbounded";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown";
}

Range RobotSpec::arm_limits() const {
  return joint_limits.arm.value_or(Range{0.0, max_reach});
}

Range RobotSpec::lift_limits() const {
  return joint_limits.lift.value_or(Range{0.0, max_height});
}

double RobotSpec::wrist_yaw_stow() const {
  return joint_limits.wrist_yaw_stow.value_or(joint_limits.wrist_yaw.max);
}

Eigen::Vector2d RobotSpec::arm_mount_point() const {
  return arm_mount.value_or(Eigen::Vector2d(base_length - arm_setback, 0.0));
}

double RobotSpec::effective_reach(double reach) const {
  return reach_datum == ReachDatum::kWheelOuterEdge ? reach + wheel_half_width : reach;
}

RobotSpec stretch_re1() {
  RobotSpec spec;
  spec.name = "Stretch RE1";
  spec.robot_mass = 23.0;
  spec.gravity = 9.807;
  spec.track_width = 0.315;
  spec.base_length = 0.24;
  spec.com_offset = 0.16;
  spec.arm_setback = 0.005;
  spec.max_reach = 0.6925;
  spec.max_height = 1.125;
  spec.segment_count = 4;
  return spec;
}

namespace {

class Checker {
 public:
  explicit Checker(ValidationReport& report) : report_(report) {}

  void finite(const std::string& field, double v) {
    if (!std::isfinite(v)) add(field, v, field + " must be finite");
  }
  void positive(const std::string& field, double v) {
    if (std::isfinite(v) && !(v > 0.0)) add(field, v, field + " must be > 0");
  }
  void non_negative(const std::string& field, double v) {
    if (std::isfinite(v) && v < 0.0) add(field, v, field + " must be >= 0");
  }
  void range(const std::string& field, const Range& r) {
    finite(field + ".min", r.min);
    finite(field + ".max", r.max);
    if (r.min > r.max) add(field, r.min, field + " min must be <= max");
  }
  void add(const std::string& field, double v, std::string msg) {
    report_.issues.push_back({field, v, std::move(msg)});
  }

 private:
  ValidationReport& report_;
};

}  // namespace

std::string ValidationReport::to_string() const {
  if (issues.empty()) return "valid\n";
  std::ostringstream os;
  os.precision(6);
  for (const auto& issue : issues) {
    os << issue.field << ": " << issue.message << " (observed " << issue.observed << ")\n";
  }
  return os.str();
}

ValidationReport validate_spec(const RobotSpec& spec) {
  ValidationReport report;
  Checker check(report);

  const std::pair<const char*, double> scalars[] = {
      {"m_r", spec.robot_mass}, {"g", spec.gravity},       {"w", spec.track_width},
      {"l", spec.base_length},  {"c", spec.com_offset},    {"t", spec.arm_setback},
      {"D", spec.max_reach},    {"H", spec.max_height},    {"m_arm", spec.arm_mass},
      {"arm_com_travel", spec.arm_com_travel}, {"wheel_half_width", spec.wheel_half_width},
  };
  for (const auto& [field, v] : scalars) check.finite(field, v);

  check.positive("m_r", spec.robot_mass);
  check.positive("g", spec.gravity);
  check.positive("w", spec.track_width);
  check.positive("l", spec.base_length);
  check.positive("c", spec.com_offset);
  if (std::isfinite(spec.com_offset) && std::isfinite(spec.base_length) &&
      spec.com_offset >= spec.base_length) {
    check.add("c", spec.com_offset, "c must be < l");
  }
  check.non_negative("t", spec.arm_setback);
  check.positive("D", spec.max_reach);
  check.positive("H", spec.max_height);
  if (spec.segment_count < 1) {
    check.add("n_segments", spec.segment_count, "n_segments must be >= 1");
  }
  check.non_negative("m_arm", spec.arm_mass);
  if (spec.arm_mass > spec.robot_mass) {
    check.add("m_arm", spec.arm_mass, "m_arm must be <= m_r");
  }
  check.non_negative("arm_com_travel", spec.arm_com_travel);
  check.non_negative("wheel_half_width", spec.wheel_half_width);

  if (!spec.base_links.empty()) {
    double total = spec.arm_mass;
    for (std::size_t i = 0; i < spec.base_links.size(); ++i) {
      const auto& link = spec.base_links[i];
      const std::string field = "base_links[" + std::to_string(i) + "]";
      check.finite(field + ".mass", link.mass);
      check.non_negative(field + ".mass", link.mass);
      if (!link.com.allFinite()) check.add(field + ".com", 0.0, field + ".com must be finite");
      total += link.mass;
    }
    if (std::abs(total - spec.robot_mass) > 1e-6) {
      check.add("base_links", total, "base_links masses + m_arm must equal m_r");
    }
  }

  const auto& jl = spec.joint_limits;
  if (jl.arm) {
    check.range("joint_limits.arm", *jl.arm);
    check.non_negative("joint_limits.arm.min", jl.arm->min);
  }
  if (jl.lift) {
    check.range("joint_limits.lift", *jl.lift);
    check.non_negative("joint_limits.lift.min", jl.lift->min);
    if (jl.lift->max > spec.max_height) {
      check.add("joint_limits.lift.max", jl.lift->max, "joint_limits.lift.max must be <= H");
    }
  }
  check.range("joint_limits.wrist_yaw", jl.wrist_yaw);
  check.range("joint_limits.wrist_pitch", jl.wrist_pitch);
  check.range("joint_limits.wrist_roll", jl.wrist_roll);
  if (jl.wrist_yaw_stow && !jl.wrist_yaw.contains(*jl.wrist_yaw_stow)) {
    check.add("joint_limits.wrist_yaw_stow", *jl.wrist_yaw_stow,
              "wrist_yaw_stow must lie within joint_limits.wrist_yaw");
  }
  return report;
}

void require_valid(const RobotSpec& spec) {
  const auto report = validate_spec(spec);
  if (!report.valid()) throw Error(ErrorCode::kInvalidSpec, report.to_string());
}

void require_within_limits(const RobotSpec& spec, const Configuration& config) {
  const auto check = [](const char* joint, double v, const Range& r) {
    if (!std::isfinite(v) || !r.contains(v)) {
      std::ostringstream os;
      os << joint << " = " << v << " outside [" << r.min << ", " << r.max << "]";
      throw Error(ErrorCode::kOutOfLimits, os.str());
    }
  };
  check("q_a", config.arm_extension, spec.arm_limits());
  check("q_l", config.lift_height, spec.lift_limits());
  if (!std::isfinite(config.base_travel)) {
    throw Error(ErrorCode::kOutOfLimits, "q_m must be finite");
  }
  check("wrist_yaw", config.wrist_yaw, spec.joint_limits.wrist_yaw);
  check("wrist_pitch", config.wrist_pitch, spec.joint_limits.wrist_pitch);
  check("wrist_roll", config.wrist_roll, spec.joint_limits.wrist_roll);
}

namespace {

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

}  // namespace

SupportPolygon SupportPolygon::from_points(std::vector<Eigen::Vector2d> points) {
  const std::size_t n = points.size();
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "support polygon needs >= 3 vertices");
  for (const auto& p : points) {
    if (!p.allFinite()) throw Error(ErrorCode::kInvalidArgument, "support polygon vertex not finite");
  }

  double area2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) area2 += cross2(points[i], points[(i + 1) % n]);
  if (!(std::abs(area2) > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "support polygon is degenerate");
  }
  if (area2 < 0.0) std::reverse(points.begin(), points.end());

  // Every turn must be strictly left, and the boundary must wind once.
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d e0 = points[(i + 1) % n] - points[i];
    const Eigen::Vector2d e1 = points[(i + 2) % n] - points[(i + 1) % n];
    const double turn = cross2(e0, e1);
    if (!(turn > 0.0)) throw Error(ErrorCode::kInvalidArgument, "support polygon is not convex");
    turning += std::atan2(turn, e0.dot(e1));
  }
  if (std::abs(turning - 2.0 * M_PI) > 1e-6) {
    throw Error(ErrorCode::kInvalidArgument, "support polygon is self-intersecting");
  }

  SupportPolygon poly;
  poly.vertices_ = std::move(points);
  return poly;
}

Eigen::Vector2d SupportPolygon::outward_normal(std::size_t i) const {
  const Eigen::Vector2d e = (edge_end(i) - edge_start(i)).normalized();
  return {e.y(), -e.x()};
}

double SupportPolygon::signed_area() const {
  double area2 = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) area2 += cross2(edge_start(i), edge_end(i));
  return 0.5 * area2;
}

bool SupportPolygon::contains(const Eigen::Vector2d& p) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (outward_normal(i).dot(p - edge_start(i)) > 0.0) return false;
  }
  return true;
}

SupportPolygon support_polygon(const RobotSpec& spec) {
  const double w = spec.track_width;
  const double l = spec.base_length;
  if (!(w > 0.0) || !(l > 0.0) || !std::isfinite(w) || !std::isfinite(l)) {
    throw Error(ErrorCode::kInvalidSpec, "degenerate support triangle (w and l must be > 0)");
  }
  // Rear contact, left drive wheel, right drive wheel: counterclockwise.
  SupportPolygon poly = SupportPolygon::from_points({
      Eigen::Vector2d(0.0, 0.0),
      Eigen::Vector2d(l, -0.5 * w),
      Eigen::Vector2d(l, 0.5 * w),
  });
  const double alpha = std::atan(w / (2.0 * l));
  poly.triangle_ = TriangleAngles{alpha, M_PI / 2.0 - alpha};
  return poly;
}

ComEstimate combine_masses(std::span<const BaseLink> parts) {
  ComEstimate out;
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();
  for (const auto& part : parts) {
    out.mass += part.mass;
    moment += part.mass * part.com;
  }
  if (!(out.mass > 0.0)) throw Error(ErrorCode::kInvalidArgument, "total mass must be > 0");
  out.position = moment / out.mass;
  return out;
}

ComEstimate aggregate_com(const RobotSpec& spec, const Configuration& config) {
  require_valid(spec);
  require_within_limits(spec, config);

  std::vector<BaseLink> parts;
  if (spec.distributed()) {
    parts = spec.base_links;
  } else {
    // Lumped mode: everything but the arm sits on the centerline at c.
    parts.push_back({spec.robot_mass - spec.arm_mass, Eigen::Vector3d(spec.com_offset, 0.0, 0.0)});
  }
  if (spec.arm_mass > 0.0) {
    const Eigen::Vector2d mount = spec.arm_mount_point();
    parts.push_back({spec.arm_mass,
                     Eigen::Vector3d(mount.x(),
                                     mount.y() + spec.arm_com_travel * config.arm_extension,
                                     config.lift_height)});
  }
  std::erase_if(parts, [](const BaseLink& p) { return p.mass == 0.0; });
  return combine_masses(parts);
}

}  // namespace stretchstab
