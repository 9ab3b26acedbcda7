// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "stretchstab/stretchstab.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "stretchstab/design.hpp"
#include "stretchstab/error.hpp"
#include "stretchstab/feasibility.hpp"
#include "stretchstab/io.hpp"
#include "stretchstab/kinematics.hpp"
#include "stretchstab/robot_model.hpp"
#include "stretchstab/statics.hpp"
#include "stretchstab/version.hpp"

struct ss_spec {
  stretchstab::RobotSpec value;
};
struct ss_sweep {
  stretchstab::SweepRequest value;
};
struct ss_problem {
  stretchstab::DesignProblem value;
};
struct ss_solution {
  stretchstab::DesignSolution value;
};
struct ss_manifest {
  std::vector<stretchstab::TaskRequirement> value;
};

namespace {

using namespace stretchstab;

thread_local std::string g_last_error;

ss_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return SS_ERR_INVALID_ARGUMENT;
    case ErrorCode::kInvalidSpec: return SS_ERR_INVALID_SPEC;
    case ErrorCode::kOutOfLimits: return SS_ERR_OUT_OF_LIMITS;
    case ErrorCode::kOutOfWorkspace: return SS_ERR_OUT_OF_WORKSPACE;
    case ErrorCode::kUnbounded: return SS_ERR_UNBOUNDED;
    case ErrorCode::kInfeasible: return SS_ERR_INFEASIBLE;
    case ErrorCode::kUnsupported: return SS_ERR_UNSUPPORTED;
    case ErrorCode::kParse: return SS_ERR_PARSE;
    case ErrorCode::kIo: return SS_ERR_IO;
  }
  return SS_ERR_INTERNAL;
}

ss_status fail(ss_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
ss_status guarded(Fn&& fn) {
  try {
    fn();
    return SS_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SS_ERR_INTERNAL, e.what());
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw Error(ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

LoadKind to_kind(ss_kind kind) {
  switch (kind) {
    case SS_KIND_PULL: return LoadKind::kPull;
    case SS_KIND_PUSH: return LoadKind::kPush;
    case SS_KIND_BACKPUSH: return LoadKind::kBackpush;
    case SS_KIND_PAYLOAD: return LoadKind::kPayload;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown ss_kind");
}

Configuration to_config(const double q[3]) {
  Configuration c;
  c.arm_extension = q[0];
  c.base_travel = q[1];
  c.lift_height = q[2];
  return c;
}

std::optional<double> optional_location(const double* location) {
  return location ? std::optional<double>(*location) : std::nullopt;
}

}  // namespace

extern "C" {

const char* ss_version(void) { return kVersion; }

const char* ss_last_error(void) { return g_last_error.c_str(); }

const char* ss_status_name(ss_status status) {
  switch (status) {
    case SS_OK: return "ok";
    case SS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SS_ERR_INVALID_SPEC: return "invalid spec";
    case SS_ERR_OUT_OF_LIMITS: return "out of joint limits";
    case SS_ERR_OUT_OF_WORKSPACE: return "out of workspace";
    case SS_ERR_UNBOUNDED: return "unbounded";
    case SS_ERR_INFEASIBLE: return "infeasible";
    case SS_ERR_UNSUPPORTED: return "unsupported";
    case SS_ERR_PARSE: return "parse error";
    case SS_ERR_IO: return "i/o error";
    case SS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

int ss_status_exit_code(ss_status status) {
  if (status == SS_OK) return 0;
  if (status == SS_ERR_PARSE || status == SS_ERR_IO) return 2;
  return 1;
}

void ss_string_free(char* str) { std::free(str); }

ss_status ss_kind_parse(const char* text, ss_kind* out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = static_cast<ss_kind>(parse_load_kind(text));
  });
}

ss_status ss_spec_load(const char* path, ss_spec** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new ss_spec{load_robot_spec(path)};
  });
}

ss_status ss_spec_parse(const char* json_text, ss_spec** out) {
  return guarded([&] {
    require(json_text && out, "null argument");
    *out = new ss_spec{parse_robot_spec(json_text)};
  });
}

ss_status ss_spec_stretch_re1(ss_spec** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = new ss_spec{stretch_re1()};
  });
}

ss_status ss_spec_clone(const ss_spec* spec, ss_spec** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = new ss_spec{spec->value};
  });
}

void ss_spec_free(ss_spec* spec) { delete spec; }

ss_status ss_spec_validate(const ss_spec* spec, int* valid, char** report) {
  return guarded([&] {
    require(spec && valid, "null argument");
    const auto r = validate_spec(spec->value);
    if (report) *report = dup_string(r.to_string());
    *valid = r.valid() ? 1 : 0;
  });
}

ss_status ss_spec_to_json(const ss_spec* spec, char** json_text) {
  return guarded([&] {
    require(spec && json_text, "null argument");
    *json_text = dup_string(robot_spec_to_json(spec->value));
  });
}

ss_status ss_spec_get(const ss_spec* spec, const char* field, double* value) {
  return guarded([&] {
    require(spec && field && value, "null argument");
    *value = get_field(spec->value, field);
  });
}

ss_status ss_spec_set(ss_spec* spec, const char* field, double value) {
  return guarded([&] {
    require(spec && field, "null argument");
    set_field(spec->value, field, value);
  });
}

ss_status ss_analyze(const ss_spec* spec, ss_kind kind, const double* location, double* value,
                     int* unbounded) {
  return guarded([&] {
    require(spec && value, "null argument");
    require_valid(spec->value);
    const Limit lim = closed_form_capability(spec->value, to_kind(kind), optional_location(location));
    *value = lim.value;
    if (unbounded) *unbounded = lim.unbounded ? 1 : 0;
  });
}

ss_status ss_curve_csv(const ss_spec* spec, ss_kind kind, double min, double max, size_t points,
                       char** csv) {
  return guarded([&] {
    require(spec && csv, "null argument");
    const auto grid = linear_grid(min, max, points);
    *csv = dup_string(capability_curve(spec->value, to_kind(kind), grid).to_csv());
  });
}

ss_status ss_tip_margin(const ss_spec* spec, const double q[3], const double force[3],
                        const double point[3], double attached_mass, double* margin,
                        size_t* binding_edge, int* stable, double* edge_moments,
                        size_t edge_capacity, size_t* edge_count) {
  return guarded([&] {
    require(spec && q && force && point && margin, "null argument");
    const auto polygon = support_polygon(spec->value);
    const auto com = aggregate_com(spec->value, to_config(q));
    AppliedLoad load;
    load.force = Eigen::Vector3d(force[0], force[1], force[2]);
    load.point = Eigen::Vector3d(point[0], point[1], point[2]);
    load.attached_mass = attached_mass;
    const auto tip = tip_margin(polygon, com, load, spec->value.gravity);
    *margin = tip.margin;
    if (binding_edge) *binding_edge = tip.binding_edge;
    if (stable) *stable = tip.stable ? 1 : 0;
    if (edge_count) *edge_count = tip.edge_moments.size();
    if (edge_moments) {
      for (size_t i = 0; i < tip.edge_moments.size() && i < edge_capacity; ++i) {
        edge_moments[i] = tip.edge_moments[i];
      }
    }
  });
}

ss_status ss_aggregate_com(const ss_spec* spec, const double q[3], double com[3], double* mass) {
  return guarded([&] {
    require(spec && q && com, "null argument");
    const auto est = aggregate_com(spec->value, to_config(q));
    com[0] = est.position.x();
    com[1] = est.position.y();
    com[2] = est.position.z();
    if (mass) *mass = est.mass;
  });
}

ss_status ss_support_alpha(const ss_spec* spec, double* alpha) {
  return guarded([&] {
    require(spec && alpha, "null argument");
    *alpha = support_polygon(spec->value).triangle()->alpha;
  });
}

ss_status ss_forward_kinematics(const ss_spec* spec, const double q[3], double pose[3]) {
  return guarded([&] {
    require(spec && q && pose, "null argument");
    const auto p = forward_kinematics(spec->value, to_config(q));
    pose[0] = p.x;
    pose[1] = p.y;
    pose[2] = p.z;
  });
}

ss_status ss_inverse_kinematics(const ss_spec* spec, const double pose[3], double q[3]) {
  return guarded([&] {
    require(spec && pose && q, "null argument");
    const auto c = inverse_kinematics(spec->value, {pose[0], pose[1], pose[2]});
    q[0] = c.arm_extension;
    q[1] = c.base_travel;
    q[2] = c.lift_height;
  });
}

ss_status ss_jacobian(const ss_spec* spec, const double q[3], double jac[9]) {
  return guarded([&] {
    require(spec && q && jac, "null argument");
    const Eigen::Matrix3d j = jacobian(spec->value, to_config(q));
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) jac[3 * r + c] = j(r, c);
    }
  });
}

ss_status ss_workspace_box(const ss_spec* spec, double* height, double* depth, double* width) {
  return guarded([&] {
    require(spec && height && depth && width, "null argument");
    const auto box = workspace_box(spec->value);
    *height = box.height;
    *depth = box.depth;
    *width = box.width.value_or(-1.0);
  });
}

ss_status ss_extension_gain(double width_increase, int segments, double* gain) {
  return guarded([&] {
    require(gain, "null argument");
    *gain = widen_base_extension_gain(width_increase, segments);
  });
}

ss_status ss_sweep_create(const ss_spec* base, ss_sweep** out) {
  return guarded([&] {
    require(base && out, "null argument");
    auto* s = new ss_sweep;
    s->value.base = base->value;
    *out = s;
  });
}

void ss_sweep_free(ss_sweep* sweep) { delete sweep; }

ss_status ss_sweep_add_grid(ss_sweep* sweep, const char* field, double min, double max,
                            size_t steps) {
  return guarded([&] {
    require(sweep && field, "null argument");
    require(sweep->value.axes.size() < 2, "at most two swept fields");
    sweep->value.axes.push_back(grid_axis(field, min, max, steps));
  });
}

ss_status ss_sweep_add_values(ss_sweep* sweep, const char* field, const double* values,
                              size_t count) {
  return guarded([&] {
    require(sweep && field && (values || count == 0), "null argument");
    require(sweep->value.axes.size() < 2, "at most two swept fields");
    require(count > 0, "sweep value list is empty");
    sweep->value.axes.push_back({field, std::vector<double>(values, values + count)});
  });
}

ss_status ss_sweep_add_metric(ss_sweep* sweep, ss_kind kind, const double* location) {
  return guarded([&] {
    require(sweep, "null argument");
    sweep->value.metrics.push_back({to_kind(kind), optional_location(location)});
  });
}

ss_status ss_sweep_run_csv(const ss_sweep* sweep, unsigned threads, char** csv) {
  return guarded([&] {
    require(sweep && csv, "null argument");
    *csv = dup_string(run_sweep(sweep->value, threads).to_csv());
  });
}

ss_status ss_problem_load(const char* path, ss_problem** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new ss_problem{load_design_problem(path)};
  });
}

ss_status ss_problem_parse(const char* json_text, const char* base_dir, ss_problem** out) {
  return guarded([&] {
    require(json_text && out, "null argument");
    *out = new ss_problem{parse_design_problem(json_text, base_dir ? base_dir : ".")};
  });
}

void ss_problem_free(ss_problem* problem) { delete problem; }

ss_status ss_solve(const ss_problem* problem, ss_solution** out) {
  return guarded([&] {
    require(problem && out, "null argument");
    *out = new ss_solution{solve_design(problem->value)};
  });
}

void ss_solution_free(ss_solution* solution) { delete solution; }

ss_status ss_solution_objective(const ss_solution* solution, double* value) {
  return guarded([&] {
    require(solution && value, "null argument");
    *value = solution->value.objective_value;
  });
}

const char* ss_solution_objective_target(const ss_solution* solution) {
  return solution ? solution->value.objective.target.c_str() : "";
}

ss_status ss_solution_csv(const ss_solution* solution, char** csv) {
  return guarded([&] {
    require(solution && csv, "null argument");
    *csv = dup_string(solution->value.to_csv());
  });
}

ss_status ss_solution_spec(const ss_solution* solution, ss_spec** out) {
  return guarded([&] {
    require(solution && out, "null argument");
    *out = new ss_spec{solution->value.spec};
  });
}

ss_status ss_manifest_load(const char* path, ss_manifest** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new ss_manifest{load_task_manifest(path)};
  });
}

ss_status ss_manifest_parse(const char* json_text, ss_manifest** out) {
  return guarded([&] {
    require(json_text && out, "null argument");
    *out = new ss_manifest{parse_task_manifest(json_text)};
  });
}

void ss_manifest_free(ss_manifest* manifest) { delete manifest; }

size_t ss_manifest_size(const ss_manifest* manifest) { return manifest ? manifest->value.size() : 0; }

ss_status ss_check_manifest(const ss_spec* spec, const ss_manifest* manifest, char** csv,
                            size_t* passed, size_t* failed) {
  return guarded([&] {
    require(spec && manifest, "null argument");
    const auto result = check_manifest(spec->value, manifest->value);
    if (csv) *csv = dup_string(result.to_csv());
    if (passed) *passed = result.passed;
    if (failed) *failed = result.failed;
  });
}

}  // extern "C"
