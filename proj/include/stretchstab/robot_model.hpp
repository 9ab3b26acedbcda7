// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace stretchstab {

// Robot frame used throughout the library: origin at the rear (omni) wheel
// contact, +x forward toward the drive axle, +y toward the right drive wheel
// (the side the arm extends to), +z up. Floor-plane quantities use (x, y).

inline constexpr double kStandardGravity = 9.807;

struct Range {
  double min = 0.0;
  double max = 0.0;

  bool contains(double v) const { return v >= min && v <= max; }
};

struct BaseLink {
  double mass = 0.0;
  Eigen::Vector3d com = Eigen::Vector3d::Zero();
};

// Where payload reach is measured from. The closed forms take the moment arm
// from the drive-wheel contact line; a reach quoted from the wheel's outer
// edge is shifted by the wheel half width before use.
enum class ReachDatum { kWheelCenter, kWheelOuterEdge };

struct JointLimits {
  std::optional<Range> arm;   // defaults to [0, D]
  std::optional<Range> lift;  // defaults to [0, H]
  Range wrist_yaw{-1.3090, 4.4506};  // 330 degrees of travel
  Range wrist_pitch{-1.5708, 1.5708};
  Range wrist_roll{-3.14159, 3.14159};
  std::optional<double> wrist_yaw_stow;  // defaults to wrist_yaw.max
};

struct RobotSpec {
  std::string name;
  double robot_mass = 0.0;       // m_r, kg
  double gravity = kStandardGravity;
  double track_width = 0.0;      // w, distance between drive-wheel contacts
  double base_length = 0.0;      // l, drive axle to rear contact
  double com_offset = 0.0;       // c, COM to rear contact along the centerline
  double arm_setback = 0.0;      // t, front edge of support to arm midline
  double max_reach = 0.0;        // D, reach beyond the right drive wheel
  double max_height = 0.0;       // H
  int segment_count = 1;         // telescoping elements
  double arm_mass = 0.0;         // moving telescoping assembly, kg
  double arm_com_travel = 0.5;   // arm COM lateral travel per unit extension
  std::optional<Eigen::Vector2d> arm_mount;  // retracted arm COM (x, y)
  std::vector<BaseLink> base_links;
  JointLimits joint_limits;
  ReachDatum reach_datum = ReachDatum::kWheelCenter;
  double wheel_half_width = 0.0;

  Range arm_limits() const;
  Range lift_limits() const;
  double wrist_yaw_stow() const;
  Eigen::Vector2d arm_mount_point() const;
  // Payload moment arm beyond the right drive-wheel contact for a quoted reach.
  double effective_reach(double reach) const;
  bool distributed() const { return !base_links.empty(); }
};

// The Stretch RE1 as characterised on hardware: wheel-center support
// triangle, COM from a balance test, H and D at the fingertips.
RobotSpec stretch_re1();

struct ValidationIssue {
  std::string field;
  double observed = 0.0;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool valid() const { return issues.empty(); }
  std::string to_string() const;
};

ValidationReport validate_spec(const RobotSpec& spec);

// Throws Error(kInvalidSpec) carrying the full report when the spec is invalid.
void require_valid(const RobotSpec& spec);

enum class Mode { kNavigation, kManipulation };

struct Configuration {
  double arm_extension = 0.0;  // q_a
  double lift_height = 0.0;    // q_l
  double base_travel = 0.0;    // q_m, signed, along the drive direction
  double wrist_yaw = 0.0;
  double wrist_pitch = 0.0;
  double wrist_roll = 0.0;
  Mode mode = Mode::kManipulation;
};

// Throws Error(kOutOfLimits) naming the first joint outside its range.
void require_within_limits(const RobotSpec& spec, const Configuration& config);

struct TriangleAngles {
  double alpha = 0.0;  // rear-vertex half angle, arctan(w / 2l)
  double beta = 0.0;   // pi/2 - alpha
};

class SupportPolygon {
 public:
  // Accepts either winding; stores counterclockwise (positive signed area in
  // the (x, y) coordinates). Throws on fewer than three vertices, collinear
  // or repeated vertices, or non-convex input.
  static SupportPolygon from_points(std::vector<Eigen::Vector2d> points);

  std::span<const Eigen::Vector2d> vertices() const { return vertices_; }
  std::size_t edge_count() const { return vertices_.size(); }
  // Edge i runs from vertex i to vertex (i + 1) % n.
  Eigen::Vector2d edge_start(std::size_t i) const { return vertices_[i]; }
  Eigen::Vector2d edge_end(std::size_t i) const {
    return vertices_[(i + 1) % vertices_.size()];
  }
  // Unit normal pointing out of the polygon for edge i.
  Eigen::Vector2d outward_normal(std::size_t i) const;
  double signed_area() const;
  bool contains(const Eigen::Vector2d& p) const;

  const std::optional<TriangleAngles>& triangle() const { return triangle_; }

 private:
  friend SupportPolygon support_polygon(const struct RobotSpec&);

  std::vector<Eigen::Vector2d> vertices_;
  std::optional<TriangleAngles> triangle_;
};

// Edge indices of the triangle built by support_polygon().
inline constexpr std::size_t kLeftSideEdge = 0;   // rear -> left drive wheel
inline constexpr std::size_t kFrontEdge = 1;      // left -> right drive wheel
inline constexpr std::size_t kRightSideEdge = 2;  // right drive wheel -> rear

SupportPolygon support_polygon(const RobotSpec& spec);

struct ComEstimate {
  double mass = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
};

ComEstimate aggregate_com(const RobotSpec& spec, const Configuration& config);

// Mass-weighted average of point masses. Throws if the total mass is not
// positive.
ComEstimate combine_masses(std::span<const BaseLink> parts);

}  // namespace stretchstab
