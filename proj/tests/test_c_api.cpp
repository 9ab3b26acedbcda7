// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through its C header only.

#include "doctest.h"

#include <cmath>
#include <string>

#include "stretchstab/stretchstab.h"

using doctest::Approx;

namespace {

const std::string kData = STRETCHSTAB_TEST_DATA_DIR;

std::string take(char* s) {
  std::string out = s ? s : "";
  ss_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(ss_version()) == "1.0.0");
  CHECK(std::string(ss_status_name(SS_ERR_INFEASIBLE)) != "");
  CHECK(ss_status_exit_code(SS_OK) == 0);
  CHECK(ss_status_exit_code(SS_ERR_PARSE) == 2);
  CHECK(ss_status_exit_code(SS_ERR_IO) == 2);
  CHECK(ss_status_exit_code(SS_ERR_OUT_OF_WORKSPACE) == 1);
  ss_kind kind;
  CHECK(ss_kind_parse("backpush", &kind) == SS_OK);
  CHECK(kind == SS_KIND_BACKPUSH);
  CHECK(ss_kind_parse("shove", &kind) == SS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("spec handles") {
  ss_spec* spec = nullptr;
  REQUIRE(ss_spec_load((kData + "/stretch_re1.spec.json").c_str(), &spec) == SS_OK);
  int valid = 0;
  char* report = nullptr;
  REQUIRE(ss_spec_validate(spec, &valid, &report) == SS_OK);
  CHECK(valid == 1);
  CHECK(take(report) == "valid\n");

  double value = 0.0;
  CHECK(ss_spec_get(spec, "D", &value) == SS_OK);
  CHECK(value == 0.6925);
  CHECK(ss_spec_get(spec, "nope", &value) == SS_ERR_INVALID_ARGUMENT);
  CHECK(std::string(ss_last_error()).find("nope") != std::string::npos);

  ss_spec* copy = nullptr;
  REQUIRE(ss_spec_clone(spec, &copy) == SS_OK);
  CHECK(ss_spec_set(copy, "c", 0.3) == SS_OK);
  CHECK(ss_spec_validate(copy, &valid, &report) == SS_OK);
  CHECK(valid == 0);
  CHECK(take(report).find("c must be < l") != std::string::npos);
  double v2 = 0.0;
  CHECK(ss_analyze(copy, SS_KIND_PAYLOAD, nullptr, &v2, nullptr) == SS_ERR_INVALID_SPEC);
  ss_spec_free(copy);
  copy = nullptr;

  char* json = nullptr;
  REQUIRE(ss_spec_to_json(spec, &json) == SS_OK);
  ss_spec* reparsed = nullptr;
  CHECK(ss_spec_parse(json, &reparsed) == SS_OK);
  ss_string_free(json);

  CHECK(ss_spec_load((kData + "/missing.json").c_str(), &copy) == SS_ERR_IO);
  CHECK(ss_spec_parse("{", &copy) == SS_ERR_PARSE);
  CHECK(copy == nullptr);

  ss_spec_free(reparsed);
  ss_spec_free(spec);
  ss_spec_free(nullptr);
}

TEST_CASE("statics through the C API") {
  ss_spec* spec = nullptr;
  REQUIRE(ss_spec_stretch_re1(&spec) == SS_OK);
  double value = 0.0;
  int unbounded = -1;
  CHECK(ss_analyze(spec, SS_KIND_PAYLOAD, nullptr, &value, &unbounded) == SS_OK);
  CHECK(value == Approx(3.47).epsilon(0.01 / 3.47));
  CHECK(unbounded == 0);
  const double h = 1.0;
  CHECK(ss_analyze(spec, SS_KIND_PULL, &h, &value, &unbounded) == SS_OK);
  CHECK(value == Approx(23.684).epsilon(1e-4));
  CHECK(ss_analyze(spec, SS_KIND_PUSH, nullptr, &value, &unbounded) == SS_ERR_INVALID_ARGUMENT);
  const double zero = 0.0;
  CHECK(ss_analyze(spec, SS_KIND_BACKPUSH, &zero, &value, &unbounded) == SS_OK);
  CHECK(unbounded == 1);
  const double high = 2.0;
  CHECK(ss_analyze(spec, SS_KIND_PULL, &high, &value, &unbounded) == SS_ERR_OUT_OF_WORKSPACE);

  char* csv = nullptr;
  REQUIRE(ss_curve_csv(spec, SS_KIND_PULL, 0.25, 1.0, 4, &csv) == SS_OK);
  CHECK(take(csv) == "h_m,force_N\n0.25,94.7356\n0.5,47.3678\n0.75,31.5785\n1,23.6839\n");

  double alpha = 0.0;
  CHECK(ss_support_alpha(spec, &alpha) == SS_OK);
  CHECK(alpha == Approx(std::atan(0.315 / 0.48)));

  const double q[3] = {0.3, 0.0, 0.5};
  double pull_force = 0.0;
  const double h7 = 0.7;
  REQUIRE(ss_analyze(spec, SS_KIND_PULL, &h7, &pull_force, nullptr) == SS_OK);
  const double f[3] = {0.0, pull_force, 0.0};
  const double point[3] = {0.235, 0.5, 0.7};
  double margin = 1.0, moments[3];
  size_t edge = 9, count = 0;
  int stable = -1;
  REQUIRE(ss_tip_margin(spec, q, f, point, 0.0, &margin, &edge, &stable, moments, 3, &count) == SS_OK);
  CHECK(std::abs(margin) < 1e-9);
  CHECK(count == 3);
  CHECK(edge == 2);

  double com[3], mass = 0.0;
  CHECK(ss_aggregate_com(spec, q, com, &mass) == SS_OK);
  CHECK(mass == 23.0);
  CHECK(com[0] == 0.16);
  ss_spec_free(spec);
}

TEST_CASE("kinematics through the C API") {
  ss_spec* spec = nullptr;
  REQUIRE(ss_spec_stretch_re1(&spec) == SS_OK);
  const double pose[3] = {0.4, -0.2, 0.9};
  double q[3], back[3], jac[9];
  REQUIRE(ss_inverse_kinematics(spec, pose, q) == SS_OK);
  REQUIRE(ss_forward_kinematics(spec, q, back) == SS_OK);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == pose[i]);
  REQUIRE(ss_jacobian(spec, q, jac) == SS_OK);
  for (int i = 0; i < 9; ++i) CHECK(jac[i] == (i % 4 == 0 ? 1.0 : 0.0));
  const double far[3] = {0.9, 0.0, 0.5};
  CHECK(ss_inverse_kinematics(spec, far, q) == SS_ERR_OUT_OF_WORKSPACE);
  CHECK(std::string(ss_last_error()).find("x exceeds D") != std::string::npos);
  const double bad_q[3] = {0.9, 0.0, 0.5};
  CHECK(ss_forward_kinematics(spec, bad_q, back) == SS_ERR_OUT_OF_LIMITS);
  double height, depth, width;
  CHECK(ss_workspace_box(spec, &height, &depth, &width) == SS_OK);
  CHECK(width == -1.0);
  ss_spec_free(spec);
}

TEST_CASE("design through the C API") {
  double gain = 0.0;
  CHECK(ss_extension_gain(0.1, 4, &gain) == SS_OK);
  CHECK(gain == Approx(0.4));
  CHECK(ss_extension_gain(0.1, 0, &gain) == SS_ERR_INVALID_ARGUMENT);

  ss_spec* spec = nullptr;
  REQUIRE(ss_spec_stretch_re1(&spec) == SS_OK);
  ss_sweep* sweep = nullptr;
  REQUIRE(ss_sweep_create(spec, &sweep) == SS_OK);
  const double reaches[] = {0.5, 0.6925, 0.9};
  CHECK(ss_sweep_add_values(sweep, "D", reaches, 3) == SS_OK);
  CHECK(ss_sweep_add_metric(sweep, SS_KIND_PAYLOAD, nullptr) == SS_OK);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(ss_sweep_run_csv(sweep, 1, &a) == SS_OK);
  REQUIRE(ss_sweep_run_csv(sweep, 4, &b) == SS_OK);
  const std::string csv = take(a);
  CHECK(csv == take(b));
  CHECK(csv == "D,payload_kg,valid,note\n0.5,4.79851,1,\n0.6925,3.47092,1,\n0.9,2.67359,1,\n");
  CHECK(ss_sweep_add_grid(sweep, "w", 0.1, 0.5, 0) == SS_ERR_INVALID_ARGUMENT);
  ss_sweep_free(sweep);

  ss_problem* problem = nullptr;
  REQUIRE(ss_problem_load((kData + "/min_mass.problem.json").c_str(), &problem) == SS_OK);
  ss_solution* sol = nullptr;
  REQUIRE(ss_solve(problem, &sol) == SS_OK);
  double m = 0.0;
  CHECK(ss_solution_objective(sol, &m) == SS_OK);
  CHECK(m == Approx(7.95).epsilon(0.01 / 7.95));
  CHECK(std::string(ss_solution_objective_target(sol)) == "m_r");
  char* solcsv = nullptr;
  CHECK(ss_solution_csv(sol, &solcsv) == SS_OK);
  CHECK(take(solcsv).find("payload>=1.2") != std::string::npos);
  ss_spec* solved = nullptr;
  REQUIRE(ss_solution_spec(sol, &solved) == SS_OK);
  double value = 0.0;
  CHECK(ss_analyze(solved, SS_KIND_PAYLOAD, nullptr, &value, nullptr) == SS_OK);
  CHECK(value >= 1.2 - 1e-9);
  ss_spec_free(solved);
  ss_solution_free(sol);
  ss_problem_free(problem);

  const std::string infeasible =
      R"({"schema": "designproblem-v1", "template_path": "stretch_re1.spec.json",
          "objective": {"minimize": "m_r"}, "constraints": [{"metric": "payload", "op": ">=", "value": 1e6}]})";
  REQUIRE(ss_problem_parse(infeasible.c_str(), kData.c_str(), &problem) == SS_OK);
  CHECK(ss_solve(problem, &sol) == SS_ERR_INFEASIBLE);
  ss_problem_free(problem);
  ss_spec_free(spec);
}

TEST_CASE("feasibility through the C API") {
  ss_spec* spec = nullptr;
  ss_manifest* manifest = nullptr;
  REQUIRE(ss_spec_stretch_re1(&spec) == SS_OK);
  REQUIRE(ss_manifest_load((kData + "/assistive_tasks.req.json").c_str(), &manifest) == SS_OK);
  CHECK(ss_manifest_size(manifest) == 3);
  char* csv = nullptr;
  size_t passed = 0, failed = 9;
  REQUIRE(ss_check_manifest(spec, manifest, &csv, &passed, &failed) == SS_OK);
  CHECK(passed == 3);
  CHECK(failed == 0);
  CHECK(take(csv).find("13.8342") != std::string::npos);
  ss_manifest_free(manifest);
  ss_spec_free(spec);
}

TEST_CASE("null arguments are rejected, not dereferenced") {
  CHECK(ss_spec_load(nullptr, nullptr) == SS_ERR_INVALID_ARGUMENT);
  double v;
  CHECK(ss_analyze(nullptr, SS_KIND_PAYLOAD, nullptr, &v, nullptr) == SS_ERR_INVALID_ARGUMENT);
  CHECK(ss_sweep_run_csv(nullptr, 1, nullptr) == SS_ERR_INVALID_ARGUMENT);
}
