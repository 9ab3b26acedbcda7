// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "stretchstab/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stretchstab/error.hpp"

namespace stretchstab {

EndEffectorPose forward_kinematics(const RobotSpec& spec, const Configuration& config) {
  require_within_limits(spec, config);
  return {config.arm_extension, config.base_travel, config.lift_height};
}

Eigen::Matrix3d jacobian(const RobotSpec& spec, const Configuration& config) {
  require_within_limits(spec, config);
  return Eigen::Matrix3d::Identity();
}

Configuration inverse_kinematics(const RobotSpec& spec, const EndEffectorPose& pose) {
  const auto fail = [](const std::string& msg) { throw Error(ErrorCode::kOutOfWorkspace, msg); };
  const auto describe = [](const char* axis, double v, const char* rel, const char* bound, double b) {
    std::ostringstream os;
    os << axis << " = " << v << " " << rel << " " << bound << " = " << b;
    return os.str();
  };

  const Range arm = spec.arm_limits();
  const Range lift = spec.lift_limits();
  if (!std::isfinite(pose.x)) fail("x is not finite");
  if (!std::isfinite(pose.y)) fail("y is not finite");
  if (!std::isfinite(pose.z)) fail("z is not finite");
  if (pose.x < arm.min) fail("x below arm travel: " + describe("x", pose.x, "<", "min", arm.min));
  if (pose.x > arm.max) fail("x exceeds D: " + describe("x", pose.x, ">", "max", arm.max));
  if (pose.z < lift.min) fail("z below lift travel: " + describe("z", pose.z, "<", "min", lift.min));
  if (pose.z > lift.max) fail("z exceeds H: " + describe("z", pose.z, ">", "max", lift.max));

  Configuration config;
  config.mode = Mode::kManipulation;
  config.arm_extension = pose.x;
  config.base_travel = pose.y;
  config.lift_height = pose.z;
  const auto& jl = spec.joint_limits;
  config.wrist_yaw = std::clamp(0.0, jl.wrist_yaw.min, jl.wrist_yaw.max);
  config.wrist_pitch = std::clamp(0.0, jl.wrist_pitch.min, jl.wrist_pitch.max);
  config.wrist_roll = std::clamp(0.0, jl.wrist_roll.min, jl.wrist_roll.max);
  return config;
}

WorkspaceBox workspace_box(const RobotSpec& spec) {
  require_valid(spec);
  return {spec.max_height, spec.max_reach, std::nullopt};
}

const char* to_string(ActionType type) {
  switch (type) {
    case ActionType::kRotateBase: return "rotate_base";
    case ActionType::kLiftArm: return "lift_arm";
    case ActionType::kLowerArm: return "lower_arm";
    case ActionType::kExtendArm: return "extend_arm";
    case ActionType::kRetractArm: return "retract_arm";
    case ActionType::kStowTool: return "stow_tool";
    case ActionType::kDeployTool: return "deploy_tool";
    case ActionType::kPanHead: return "pan_head";
  }
  return "unknown";
}

TransitionPlan plan_mode_transition(const RobotSpec& spec, const Configuration& config, Mode target,
                                    const TransitionOptions& options) {
  require_within_limits(spec, config);

  TransitionPlan plan;
  plan.from = config.mode;
  plan.to = target;
  if (config.mode == target) return plan;

  auto& a = plan.actions;
  if (target == Mode::kManipulation) {
    const double lift = options.lift_target.value_or(config.lift_height);
    const double extend = options.extend_target.value_or(config.arm_extension);
    if (!spec.lift_limits().contains(lift)) {
      throw Error(ErrorCode::kOutOfLimits, "lift target outside joint limits");
    }
    if (!spec.arm_limits().contains(extend)) {
      throw Error(ErrorCode::kOutOfLimits, "extension target outside joint limits");
    }
    if (!spec.joint_limits.wrist_yaw.contains(options.deploy_yaw)) {
      throw Error(ErrorCode::kOutOfLimits, "deploy yaw outside joint limits");
    }
    // The tool swings out before the arm leaves the footprint.
    a.push_back({ActionType::kRotateBase, options.base_rotation});
    a.push_back({ActionType::kDeployTool, options.deploy_yaw});
    a.push_back({ActionType::kLiftArm, lift});
    a.push_back({ActionType::kExtendArm, extend});
    a.push_back({ActionType::kPanHead, options.head_pan_manipulation});
  } else {
    a.push_back({ActionType::kRetractArm, spec.arm_limits().min});
    a.push_back({ActionType::kStowTool, spec.wrist_yaw_stow()});
    if (options.lower_arm_for_navigation) {
      if (!spec.lift_limits().contains(options.navigation_lift)) {
        throw Error(ErrorCode::kOutOfLimits, "navigation lift outside joint limits");
      }
      a.push_back({ActionType::kLowerArm, options.navigation_lift});
    }
    a.push_back({ActionType::kPanHead, options.head_pan_navigation});
  }
  return plan;
}

Configuration apply_plan(const Configuration& config, const TransitionPlan& plan) {
  Configuration out = config;
  for (const auto& action : plan.actions) {
    switch (action.type) {
      case ActionType::kLiftArm:
      case ActionType::kLowerArm: out.lift_height = action.target; break;
      case ActionType::kExtendArm:
      case ActionType::kRetractArm: out.arm_extension = action.target; break;
      case ActionType::kStowTool:
      case ActionType::kDeployTool: out.wrist_yaw = action.target; break;
      case ActionType::kRotateBase:
      case ActionType::kPanHead: break;
    }
  }
  out.mode = plan.to;
  return out;
}

}  // namespace stretchstab
