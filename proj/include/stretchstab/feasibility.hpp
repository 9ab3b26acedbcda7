// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stretchstab/robot_model.hpp"
#include "stretchstab/statics.hpp"

namespace stretchstab {

struct TaskRequirement {
  std::string name;
  LoadKind kind = LoadKind::kPull;
  double magnitude = 0.0;          // N, or kg for payload
  std::optional<double> location;  // height h, or reach (payload; default D)
};

struct FeasibilityVerdict {
  TaskRequirement requirement;
  Limit capability;
  double margin = 0.0;  // capability - magnitude
  bool pass = false;
  std::string reason;   // empty on pass
};

// A location outside the workspace yields a failing verdict with capability 0
// and reason "unreachable".
FeasibilityVerdict check_task(const RobotSpec& spec, const TaskRequirement& req);

struct ManifestResult {
  std::vector<FeasibilityVerdict> verdicts;  // input order
  std::size_t passed = 0;
  std::size_t failed = 0;

  bool all_pass() const { return failed == 0; }
  std::string to_csv() const;
};

// Never throws for per-item problems; they become failing verdicts.
ManifestResult check_manifest(const RobotSpec& spec, std::span<const TaskRequirement> reqs);

}  // namespace stretchstab
