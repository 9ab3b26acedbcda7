// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include <string>

#include "stretchstab/csv.hpp"
#include "stretchstab/error.hpp"
#include "stretchstab/io.hpp"
#include "stretchstab/root_find.hpp"

using namespace stretchstab;

namespace {

const std::filesystem::path kData = STRETCHSTAB_TEST_DATA_DIR;

std::string parse_error(const std::string& text) {
  try {
    parse_robot_spec(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    return e.what();
  }
  FAIL("parse succeeded");
  return {};
}

const char* kMinimalSpec =
    R"({"schema": "robotspec-v1", "m_r": 23, "w": 0.315, "l": 0.24, "c": 0.16, "t": 0.005,
        "D": 0.6925, "H": 1.125})";

}  // namespace

TEST_CASE("shipped spec matches the built-in Stretch parameters") {
  const auto file = load_robot_spec(kData / "stretch_re1.spec.json");
  const auto built = stretch_re1();
  CHECK(file.robot_mass == built.robot_mass);
  CHECK(file.gravity == built.gravity);
  CHECK(file.track_width == built.track_width);
  CHECK(file.base_length == built.base_length);
  CHECK(file.com_offset == built.com_offset);
  CHECK(file.arm_setback == built.arm_setback);
  CHECK(file.max_reach == built.max_reach);
  CHECK(file.max_height == built.max_height);
  CHECK(file.segment_count == 4);
  CHECK(file.reach_datum == ReachDatum::kWheelCenter);
  CHECK(validate_spec(file).valid());
}

TEST_CASE("parse_robot_spec defaults and round trip") {
  const auto spec = parse_robot_spec(kMinimalSpec);
  CHECK(spec.gravity == 9.807);
  CHECK(spec.segment_count == 1);
  CHECK(spec.arm_mass == 0.0);
  CHECK_FALSE(spec.distributed());

  RobotSpec rich = stretch_re1();
  rich.arm_mass = 2.0;
  rich.arm_mount = Eigen::Vector2d(0.2, 0.1);
  rich.joint_limits.arm = Range{0.0, 0.5};
  rich.joint_limits.wrist_yaw_stow = 3.0;
  const auto back = parse_robot_spec(robot_spec_to_json(rich));
  CHECK(robot_spec_to_json(back) == robot_spec_to_json(rich));
  CHECK(back.arm_limits().max == 0.5);
  CHECK(back.arm_mount_point().y() == 0.1);
}

TEST_CASE("parse_robot_spec reports where a file is wrong") {
  CHECK(parse_error("{\n  \"m_r\": 23,\n  \"w\": ,\n}").find("line 3") != std::string::npos);
  CHECK(parse_error(R"({"schema": "robotspec-v1", "m_r": 23})").find("field 'w': missing") !=
        std::string::npos);
  std::string extra = kMinimalSpec;
  extra.insert(1, R"("mass": 1, )");
  CHECK(parse_error(extra).find("field 'mass': unknown key") != std::string::npos);
  std::string wrong_schema = kMinimalSpec;
  wrong_schema.replace(wrong_schema.find("robotspec-v1"), 12, "robotspec-v9");
  CHECK(parse_error(wrong_schema).find("field 'schema'") != std::string::npos);
  std::string bad_type = kMinimalSpec;
  bad_type.replace(bad_type.find("23"), 2, "\"heavy\"");
  CHECK(parse_error(bad_type).find("field 'm_r'") != std::string::npos);

  // Parsing is separate from validation: c >= l still parses.
  std::string invalid = kMinimalSpec;
  invalid.replace(invalid.find("0.16"), 4, "0.30");
  CHECK_FALSE(validate_spec(parse_robot_spec(invalid)).valid());
}

TEST_CASE("missing files are I/O errors") {
  try {
    load_robot_spec(kData / "no_such.spec.json");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

TEST_CASE("design problems") {
  const auto p = load_design_problem(kData / "min_mass.problem.json");
  CHECK(p.objective.target == "m_r");
  CHECK(p.objective.sense == Sense::kMinimize);
  CHECK(p.free == std::vector<std::string>{"m_r"});
  REQUIRE(p.constraints.size() == 1);
  CHECK(p.constraints[0].label() == "payload>=1.2");
  CHECK(p.base.robot_mass == 23.0);

  const std::string inline_problem = std::string(R"({"schema": "designproblem-v1", "template": )") +
                                     kMinimalSpec +
                                     R"(, "objective": {"minimize": "w"}, "frozen": ["D", "t", "l", "m_r", "c"],
        "constraints": [{"metric": "pull", "op": ">=", "value": 30, "height": 0.5}],
        "bounds": {"w": [0.1, 1.0]}})";
  const auto q = parse_design_problem(inline_problem, ".");
  CHECK(q.free == std::vector<std::string>{"w"});
  CHECK(q.bounds.at("w").max == 1.0);
  CHECK(*q.constraints[0].location == 0.5);

  const auto implicit = parse_design_problem(
      std::string(R"({"schema": "designproblem-v1", "template": )") + kMinimalSpec +
          R"(, "objective": {"maximize": "D"}, "constraints": []})",
      ".");
  CHECK(implicit.free == std::vector<std::string>{"D"});

  CHECK_THROWS_AS(parse_design_problem(R"({"schema": "designproblem-v1", "objective": {"minimize": "w"}})", "."),
                  Error);
  CHECK_THROWS_AS(parse_design_problem(std::string(R"({"schema": "designproblem-v1", "template": )") +
                                           kMinimalSpec +
                                           R"(, "objective": {"minimize": "w"}, "constraints": [
            {"metric": "payload", "op": ">", "value": 1}]})",
                                       "."),
                  Error);
}

TEST_CASE("task manifests") {
  const auto reqs = load_task_manifest(kData / "assistive_tasks.req.json");
  REQUIRE(reqs.size() == 3);
  CHECK(reqs[0].kind == LoadKind::kPull);
  CHECK(reqs[0].magnitude == 20.0);
  CHECK(*reqs[0].location == 0.7);
  CHECK(reqs[1].kind == LoadKind::kPush);
  CHECK(reqs[2].kind == LoadKind::kPayload);
  CHECK_FALSE(reqs[2].location);

  CHECK_THROWS_AS(parse_task_manifest(R"({"schema": "taskreq-v1", "requirements": [
      {"name": "x", "kind": "lift", "magnitude": 1}]})"),
                  Error);
  CHECK_THROWS_AS(parse_task_manifest(R"({"schema": "taskreq-v1", "requirements": [
      {"name": "x", "kind": "pull", "magnitude": -1, "height": 0.5}]})"),
                  Error);
  CHECK_THROWS_AS(parse_task_manifest(R"({"schema": "taskreq-v1", "requirements": [
      {"name": "x", "kind": "pull", "magnitude": 1}]})"),
                  Error);
}

TEST_CASE("number formatting is locale independent and stable") {
  CHECK(format_number(23.683912) == "23.6839");
  CHECK(format_number(0.7) == "0.7");
  CHECK(format_number(1e6) == "1e+06");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_fixed(3.47092, 2) == "3.47");

  CsvWriter csv;
  csv.comment("x");
  csv.row({"a,b", "say \"hi\"", "plain"});
  CHECK(csv.str() == "# x\n\"a,b\",\"say \"\"hi\"\"\",plain\n");
}

TEST_CASE("bisect_threshold") {
  const double x = bisect_threshold([](double v) { return v * v >= 2.0; }, 0.0, 2.0);
  CHECK(x * x >= 2.0);
  CHECK(x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  const double y = bisect_threshold([](double v) { return v <= 0.25; }, 0.0, 1.0, false);
  CHECK(y <= 0.25);
  CHECK(y == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(bisect_threshold([](double v) { return v > 5.0; }, 0.0, 1.0), Error);
  CHECK_THROWS_AS(bisect_threshold([](double) { return true; }, 1.0, 0.0), Error);
}
