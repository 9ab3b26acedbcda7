// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "stretchstab/robot_model.hpp"

namespace stretchstab {

// End-of-arm position in the manipulation-mode Cartesian frame: x out along
// the arm, y along the base's drive direction, z up.
struct EndEffectorPose {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct WorkspaceBox {
  double height = 0.0;
  double depth = 0.0;
  std::optional<double> width;  // empty: unbounded base travel
};

// With the base restricted to forward/backward travel the four main joints
// map one-to-one onto (x, y, z) = (q_a, q_m, q_l).
EndEffectorPose forward_kinematics(const RobotSpec& spec, const Configuration& config);

// d(x, y, z) / d(q_a, q_m, q_l). Identity everywhere inside the limits.
Eigen::Matrix3d jacobian(const RobotSpec& spec, const Configuration& config);

// Throws Error(kOutOfWorkspace) naming the first violated axis. Wrist joints
// are left at zero (or clamped into their limits).
Configuration inverse_kinematics(const RobotSpec& spec, const EndEffectorPose& pose);

WorkspaceBox workspace_box(const RobotSpec& spec);

enum class ActionType {
  kRotateBase,
  kLiftArm,
  kLowerArm,
  kExtendArm,
  kRetractArm,
  kStowTool,
  kDeployTool,
  kPanHead,
};

const char* to_string(ActionType type);

struct TransitionAction {
  ActionType type;
  double target = 0.0;  // rad for rotations/wrist/head, m for lift/arm
};

struct TransitionPlan {
  Mode from = Mode::kNavigation;
  Mode to = Mode::kNavigation;
  std::vector<TransitionAction> actions;
};

struct TransitionOptions {
  double base_rotation = M_PI / 2.0;  // turn so the arm faces the task
  double deploy_yaw = 0.0;            // wrist yaw with the tool swung out
  double head_pan_manipulation = -M_PI / 2.0;
  double head_pan_navigation = 0.0;
  std::optional<double> lift_target;    // default: keep current height
  std::optional<double> extend_target;  // default: keep current extension
  bool lower_arm_for_navigation = false;
  double navigation_lift = 0.0;
};

TransitionPlan plan_mode_transition(const RobotSpec& spec, const Configuration& config, Mode target,
                                    const TransitionOptions& options = {});

// Joint state after executing a plan (base rotation and head pan are not part
// of Configuration and are ignored).
Configuration apply_plan(const Configuration& config, const TransitionPlan& plan);

}  // namespace stretchstab
