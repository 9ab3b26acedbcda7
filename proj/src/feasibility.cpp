// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "stretchstab/feasibility.hpp"

#include <cmath>

#include "stretchstab/csv.hpp"
#include "stretchstab/error.hpp"

namespace stretchstab {

FeasibilityVerdict check_task(const RobotSpec& spec, const TaskRequirement& req) {
  if (!std::isfinite(req.magnitude) || req.magnitude < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "requirement '" + req.name + "' magnitude must be >= 0");
  }
  if (req.kind != LoadKind::kPayload && !req.location) {
    throw Error(ErrorCode::kInvalidArgument, "requirement '" + req.name + "' needs a height");
  }
  require_valid(spec);

  FeasibilityVerdict v;
  v.requirement = req;
  try {
    v.capability = closed_form_capability(spec, req.kind, req.location);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kOutOfWorkspace) throw;
    v.capability = Limit::finite(0.0);
    v.margin = -req.magnitude;
    v.pass = false;
    v.reason = "unreachable";
    return v;
  }
  v.margin = v.capability.value - req.magnitude;
  v.pass = v.margin >= 0.0;
  if (!v.pass) v.reason = "exceeds capability";
  return v;
}

ManifestResult check_manifest(const RobotSpec& spec, std::span<const TaskRequirement> reqs) {
  ManifestResult out;
  for (const auto& req : reqs) {
    FeasibilityVerdict v;
    try {
      v = check_task(spec, req);
    } catch (const Error& e) {
      v.requirement = req;
      v.capability = Limit::finite(0.0);
      v.margin = -req.magnitude;
      v.pass = false;
      v.reason = e.what();
    }
    (v.pass ? out.passed : out.failed) += 1;
    out.verdicts.push_back(std::move(v));
  }
  return out;
}

std::string ManifestResult::to_csv() const {
  CsvWriter csv;
  csv.row({"name", "kind", "location_m", "required", "capability", "margin", "verdict", "reason"});
  for (const auto& v : verdicts) {
    const auto& r = v.requirement;
    const auto cell = [](double x) { return std::isinf(x) ? std::string("unbounded") : format_number(x); };
    csv.row({r.name, to_string(r.kind), r.location ? format_number(*r.location) : std::string("D"),
             format_number(r.magnitude), cell(v.capability.value), cell(v.margin),
             v.pass ? "pass" : "fail", v.reason});
  }
  return csv.str();
}

}  // namespace stretchstab
