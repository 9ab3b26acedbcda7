// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stretchstab/robot_model.hpp"
#include "stretchstab/statics.hpp"

namespace stretchstab {

// Scalar RobotSpec fields addressed by their file key (m_r, g, w, l, c, t, D,
// H, m_arm, arm_com_travel, wheel_half_width).
std::span<const std::string_view> scalar_fields();
double get_field(const RobotSpec& spec, std::string_view key);
void set_field(RobotSpec& spec, std::string_view key, double value);

// Arm extension gained by widening the base: each telescoping element grows
// by the width increase.
double widen_base_extension_gain(double width_increase, int segment_count);

// ---------------------------------------------------------------- sweeps --

struct SweepAxis {
  std::string field;
  std::vector<double> values;
};

// `steps` evenly spaced values on [min, max]; steps == 0 throws.
SweepAxis grid_axis(std::string field, double min, double max, std::size_t steps);

struct SweepMetric {
  LoadKind kind = LoadKind::kPayload;
  std::optional<double> location;  // height for forces; reach for payload (default D)

  std::string column() const;
};

struct SweepRequest {
  RobotSpec base;
  std::vector<SweepAxis> axes;  // one or two
  std::vector<SweepMetric> metrics;
};

struct SweepRow {
  std::vector<double> params;
  std::vector<Limit> metrics;
  bool valid = true;
  std::string note;
};

struct SweepTable {
  std::vector<std::string> param_names;
  std::vector<std::string> metric_names;
  std::vector<SweepRow> rows;

  std::string to_csv() const;
};

// Rows follow the grids lexicographically (first axis outermost). Rows may be
// evaluated on `threads` workers; the result does not depend on it. Grid
// points yielding an invalid spec are kept and flagged.
SweepTable run_sweep(const SweepRequest& request, unsigned threads = 1);

// ---------------------------------------------------------- inverse design --

// Variables the solver may free: c, D, l, m_r, t, w.
std::span<const std::string_view> design_variables();

enum class Sense { kMinimize, kMaximize };
enum class Comparator { kAtLeast, kAtMost };

struct Objective {
  Sense sense = Sense::kMinimize;
  std::string target;  // minimize w | m_r | l, maximize D | payload
};

struct DesignConstraint {
  std::string metric;  // pull | push | backpush | payload | a design variable
  Comparator cmp = Comparator::kAtLeast;
  double value = 0.0;
  std::optional<double> location;  // height, or reach for payload (default D)

  std::string label() const;
};

struct DesignProblem {
  RobotSpec base;
  Objective objective;
  std::vector<std::string> free;  // one or two design variables
  std::vector<DesignConstraint> constraints;
  std::map<std::string, Range> bounds;  // default [0.1x, 10x] of the template
};

// Free set implied by a list of frozen design variables.
std::vector<std::string> free_from_frozen(std::span<const std::string> frozen);

// Capability achieved by `spec`; out-of-workspace locations count as 0,
// unbounded ones as +inf.
double evaluate_metric(const RobotSpec& spec, const std::string& metric,
                       std::optional<double> location);

struct ConstraintResult {
  DesignConstraint constraint;
  double achieved = 0.0;
  double margin = 0.0;  // >= 0 when satisfied, in the metric's unit
};

struct DesignSolution {
  RobotSpec spec;
  Objective objective;
  double objective_value = 0.0;
  std::vector<std::string> free;
  std::vector<ConstraintResult> constraints;
  int iterations = 0;

  std::string to_csv() const;
};

// Every capability metric is monotone in each design variable, so a single
// free variable is solved exactly: each constraint clips the search interval
// at its threshold (closed form where the metric is affine in the variable,
// bisection otherwise) and the objective picks an end. Two free variables run
// coordinate descent in byte order of their names, at most 100 passes.
//
// Throws Error(kInfeasible) naming the binding constraint, and
// Error(kUnsupported) when the constraints pull a non-objective variable in
// opposite directions.
DesignSolution solve_design(const DesignProblem& problem);

}  // namespace stretchstab
