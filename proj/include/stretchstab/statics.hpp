// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "stretchstab/robot_model.hpp"

namespace stretchstab {

// A capability value that may diverge (zero moment arm). `value` is +inf when
// `unbounded` is set so comparisons keep working.
struct Limit {
  double value = 0.0;
  bool unbounded = false;

  static Limit finite(double v) { return {v, false}; }
  static Limit infinite() { return {std::numeric_limits<double>::infinity(), true}; }
};

// Load kinds shared by curves, sweeps, design constraints and task checks.
enum class LoadKind { kPull, kPush, kBackpush, kPayload };

const char* to_string(LoadKind kind);
LoadKind parse_load_kind(const std::string& text);

// Symbols of the two-contact planar tipping diagrams. Contact a is the right
// drive wheel, b the left one.
struct PlanarCase {
  double robot_mass = 0.0;
  double gravity = kStandardGravity;
  double com_to_right = 0.0;   // d_ra
  double com_to_left = 0.0;    // d_rb
  double payload_arm = 0.0;    // d_p, beyond the right contact
  double force_height = 0.0;   // d_F
};

// Symmetric case (COM midway between the drive wheels).
PlanarCase planar_case(const RobotSpec& spec, double payload_arm, double force_height);
// Lateral arms taken from an aggregated COM.
PlanarCase planar_case(const RobotSpec& spec, const ComEstimate& com, double payload_arm,
                       double force_height);

Limit planar_max_payload(const PlanarCase& pc);
Limit planar_max_pull(const PlanarCase& pc);
Limit planar_max_push(const PlanarCase& pc);

// Triangular support (two drive wheels and a rear caster), COM on the
// centerline at distance c from the rear contact.

// Worst case over the workspace: payload at full reach D.
double tri_max_payload(const RobotSpec& spec);
// Payload held at `reach` beyond the right drive wheel; reach in [0, D].
Limit tri_payload_at_reach(const RobotSpec& spec, double reach);
// Lateral pull/push magnitude at arm height h; h in [0, H].
Limit tri_max_pull_push(const RobotSpec& spec, double height);
// Force from driving backwards into a load at height h; h in [0, H].
Limit tri_backpush(const RobotSpec& spec, double height);

// Dispatches to the closed form for `kind`. `location` is a height for force
// kinds and a reach for payload (defaulting to D when empty).
Limit closed_form_capability(const RobotSpec& spec, LoadKind kind,
                             std::optional<double> location = std::nullopt);

struct AppliedLoad {
  Eigen::Vector3d force = Eigen::Vector3d::Zero();  // N
  Eigen::Vector3d point = Eigen::Vector3d::Zero();  // m
  double attached_mass = 0.0;                       // kg, hangs at `point`
};

struct TipAnalysis {
  std::vector<double> edge_moments;  // N*m about each edge, positive restoring
  std::size_t binding_edge = 0;
  double margin = 0.0;
  bool stable = false;
};

// Net restoring moment about every edge of a convex support polygon from the
// COM weight, attached masses and applied forces. Only the force component
// normal to an edge tips about it.
TipAnalysis tip_margin(const SupportPolygon& polygon, const ComEstimate& com,
                       std::span<const AppliedLoad> loads, double gravity = kStandardGravity);
TipAnalysis tip_margin(const SupportPolygon& polygon, const ComEstimate& com,
                       const AppliedLoad& load, double gravity = kStandardGravity);

struct CapabilityCurve {
  std::string variable;  // "h" or "reach"
  std::string model;
  LoadKind kind = LoadKind::kPull;
  std::vector<double> grid;
  std::vector<Limit> values;

  // Header `h_m,force_N` or `reach_m,payload_kg`; unbounded cells print
  // `unbounded`.
  std::string to_csv() const;
};

// n evenly spaced samples; n == 1 yields {min}.
std::vector<double> linear_grid(double min, double max, std::size_t n);

CapabilityCurve capability_curve(const RobotSpec& spec, LoadKind kind,
                                 std::span<const double> grid);

}  // namespace stretchstab
