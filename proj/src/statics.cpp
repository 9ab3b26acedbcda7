// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "stretchstab/statics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stretchstab/csv.hpp"
#include "stretchstab/error.hpp"

namespace stretchstab {

const char* to_string(LoadKind kind) {
  switch (kind) {
    case LoadKind::kPull: return "pull";
    case LoadKind::kPush: return "push";
    case LoadKind::kBackpush: return "backpush";
    case LoadKind::kPayload: return "payload";
  }
  return "unknown";
}

LoadKind parse_load_kind(const std::string& text) {
  if (text == "pull") return LoadKind::kPull;
  if (text == "push") return LoadKind::kPush;
  if (text == "backpush") return LoadKind::kBackpush;
  if (text == "payload") return LoadKind::kPayload;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown load kind '" + text + "' (expected pull, push, backpush or payload)");
}

namespace {

void require_non_negative(const char* name, double v) {
  if (!std::isfinite(v) || v < 0.0) {
    std::ostringstream os;
    os << name << " must be finite and >= 0 (got " << v << ")";
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
}

void check_planar(const PlanarCase& pc) {
  if (!std::isfinite(pc.robot_mass) || !(pc.robot_mass > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "m_r must be > 0");
  }
  if (!std::isfinite(pc.gravity) || !(pc.gravity > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "g must be > 0");
  }
  require_non_negative("d_ra", pc.com_to_right);
  require_non_negative("d_rb", pc.com_to_left);
  require_non_negative("d_p", pc.payload_arm);
  require_non_negative("d_F", pc.force_height);
}

// Moment ratio with the zero-arm conventions: no restoring moment means no
// capability, no tipping arm means no limit.
Limit ratio(double restoring, double arm) {
  if (restoring == 0.0) return Limit::finite(0.0);
  if (arm == 0.0) return Limit::infinite();
  return Limit::finite(restoring / arm);
}

// The closed forms only need their own symbols to make sense. c == l is
// admitted so the back-push limit can reach zero.
void check_triangle_inputs(const RobotSpec& s) {
  const auto positive = [](const char* name, double v) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw Error(ErrorCode::kInvalidSpec, std::string(name) + " must be > 0");
    }
  };
  positive("m_r", s.robot_mass);
  positive("g", s.gravity);
  positive("w", s.track_width);
  positive("l", s.base_length);
  positive("D", s.max_reach);
  positive("H", s.max_height);
  if (!std::isfinite(s.com_offset) || s.com_offset < 0.0 || s.com_offset > s.base_length) {
    throw Error(ErrorCode::kInvalidSpec, "c must lie in [0, l]");
  }
  if (!std::isfinite(s.arm_setback) || s.arm_setback < 0.0) {
    throw Error(ErrorCode::kInvalidSpec, "t must be >= 0");
  }
}

void check_height(const RobotSpec& s, double h) {
  if (!std::isfinite(h) || h < 0.0) {
    throw Error(ErrorCode::kOutOfWorkspace, "height must be >= 0");
  }
  if (h > s.max_height) {
    std::ostringstream os;
    os << "height " << h << " m exceeds H = " << s.max_height << " m";
    throw Error(ErrorCode::kOutOfWorkspace, os.str());
  }
}

}  // namespace

PlanarCase planar_case(const RobotSpec& spec, double payload_arm, double force_height) {
  PlanarCase pc;
  pc.robot_mass = spec.robot_mass;
  pc.gravity = spec.gravity;
  pc.com_to_right = 0.5 * spec.track_width;
  pc.com_to_left = 0.5 * spec.track_width;
  pc.payload_arm = payload_arm;
  pc.force_height = force_height;
  return pc;
}

PlanarCase planar_case(const RobotSpec& spec, const ComEstimate& com, double payload_arm,
                       double force_height) {
  PlanarCase pc = planar_case(spec, payload_arm, force_height);
  pc.robot_mass = com.mass;
  pc.com_to_right = 0.5 * spec.track_width - com.position.y();
  pc.com_to_left = 0.5 * spec.track_width + com.position.y();
  return pc;
}

Limit planar_max_payload(const PlanarCase& pc) {
  check_planar(pc);
  return ratio(pc.robot_mass * pc.com_to_right, pc.payload_arm);
}

Limit planar_max_pull(const PlanarCase& pc) {
  check_planar(pc);
  return ratio(pc.robot_mass * pc.gravity * pc.com_to_right, pc.force_height);
}

Limit planar_max_push(const PlanarCase& pc) {
  check_planar(pc);
  return ratio(pc.robot_mass * pc.gravity * pc.com_to_left, pc.force_height);
}

Limit tri_payload_at_reach(const RobotSpec& spec, double reach) {
  check_triangle_inputs(spec);
  if (!std::isfinite(reach) || reach < 0.0 || reach > spec.max_reach) {
    std::ostringstream os;
    os << "reach " << reach << " m outside [0, D = " << spec.max_reach << " m]";
    throw Error(ErrorCode::kOutOfWorkspace, os.str());
  }
  const double arm = spec.effective_reach(reach);
  const double denom =
      spec.arm_setback + 2.0 * spec.base_length * arm / spec.track_width;
  return ratio(spec.robot_mass * spec.com_offset, denom);
}

double tri_max_payload(const RobotSpec& spec) {
  return tri_payload_at_reach(spec, spec.max_reach).value;
}

Limit tri_max_pull_push(const RobotSpec& spec, double height) {
  check_triangle_inputs(spec);
  check_height(spec, height);
  return ratio(spec.robot_mass * spec.gravity * spec.com_offset * spec.track_width,
               2.0 * height * spec.base_length);
}

Limit tri_backpush(const RobotSpec& spec, double height) {
  check_triangle_inputs(spec);
  check_height(spec, height);
  return ratio(spec.robot_mass * spec.gravity * (spec.base_length - spec.com_offset), height);
}

Limit closed_form_capability(const RobotSpec& spec, LoadKind kind, std::optional<double> location) {
  switch (kind) {
    case LoadKind::kPull:
    case LoadKind::kPush:
      if (!location) throw Error(ErrorCode::kInvalidArgument, "force capability needs a height");
      return tri_max_pull_push(spec, *location);
    case LoadKind::kBackpush:
      if (!location) throw Error(ErrorCode::kInvalidArgument, "force capability needs a height");
      return tri_backpush(spec, *location);
    case LoadKind::kPayload:
      return tri_payload_at_reach(spec, location.value_or(spec.max_reach));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown load kind");
}

TipAnalysis tip_margin(const SupportPolygon& polygon, const ComEstimate& com,
                       std::span<const AppliedLoad> loads, double gravity) {
  if (!com.position.allFinite() || !std::isfinite(com.mass) || com.mass < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "COM estimate must be finite with mass >= 0");
  }
  if (!std::isfinite(gravity) || gravity < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "gravity must be finite and >= 0");
  }
  for (const auto& load : loads) {
    if (!load.force.allFinite() || !load.point.allFinite() || !std::isfinite(load.attached_mass) ||
        load.attached_mass < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "applied load must be finite with mass >= 0");
    }
  }

  TipAnalysis out;
  out.edge_moments.reserve(polygon.edge_count());
  for (std::size_t i = 0; i < polygon.edge_count(); ++i) {
    const Eigen::Vector2d n = polygon.outward_normal(i);
    const Eigen::Vector2d v = polygon.edge_start(i);
    // Signed distance beyond the edge (negative inside).
    const auto beyond = [&](const Eigen::Vector3d& p) { return n.dot(p.head<2>() - v); };

    double moment = -com.mass * gravity * beyond(com.position);
    for (const auto& load : loads) {
      const double d = beyond(load.point);
      const double vertical = load.force.z() - load.attached_mass * gravity;
      moment += vertical * d;
      moment -= load.point.z() * n.dot(load.force.head<2>());
    }
    out.edge_moments.push_back(moment);
  }
  const auto it = std::min_element(out.edge_moments.begin(), out.edge_moments.end());
  out.binding_edge = static_cast<std::size_t>(it - out.edge_moments.begin());
  out.margin = *it;
  out.stable = out.margin >= 0.0;
  return out;
}

TipAnalysis tip_margin(const SupportPolygon& polygon, const ComEstimate& com,
                       const AppliedLoad& load, double gravity) {
  return tip_margin(polygon, com, std::span<const AppliedLoad>(&load, 1), gravity);
}

std::vector<double> linear_grid(double min, double max, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "grid needs at least one point");
  if (!std::isfinite(min) || !std::isfinite(max)) {
    throw Error(ErrorCode::kInvalidArgument, "grid bounds must be finite");
  }
  if (n == 1) return {min};
  if (!(max > min)) throw Error(ErrorCode::kInvalidArgument, "grid max must exceed min");
  std::vector<double> out(n);
  const double step = (max - min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = min + step * static_cast<double>(i);
  out.back() = max;
  return out;
}

CapabilityCurve capability_curve(const RobotSpec& spec, LoadKind kind,
                                 std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::kInvalidArgument, "capability curve needs a non-empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "capability curve grid must be strictly increasing");
    }
  }
  require_valid(spec);

  CapabilityCurve curve;
  curve.kind = kind;
  curve.grid.assign(grid.begin(), grid.end());
  switch (kind) {
    case LoadKind::kPull:
    case LoadKind::kPush:
      curve.variable = "h";
      curve.model = "triangle-pull-push";
      break;
    case LoadKind::kBackpush:
      curve.variable = "h";
      curve.model = "triangle-backpush";
      break;
    case LoadKind::kPayload:
      curve.variable = "reach";
      curve.model = "triangle-payload";
      break;
  }
  curve.values.reserve(grid.size());
  for (double x : grid) curve.values.push_back(closed_form_capability(spec, kind, x));
  return curve;
}

std::string CapabilityCurve::to_csv() const {
  CsvWriter csv;
  if (kind == LoadKind::kPayload) {
    csv.row({"reach_m", "payload_kg"});
  } else {
    csv.row({"h_m", "force_N"});
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv.row({format_number(grid[i]),
             values[i].unbounded ? std::string("unbounded") : format_number(values[i].value)});
  }
  return csv.str();
}

}  // namespace stretchstab
