// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "stretchstab/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "stretchstab/error.hpp"

namespace stretchstab {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kParse, "field '" + field + "': " + what);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // what() reads "[json.exception.parse_error.101] parse error at line L, column C: ..."
    std::string msg = e.what();
    if (auto pos = msg.find("] "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw Error(ErrorCode::kParse, msg);
  }
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) field_error(where, "expected an object");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& prefix) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) field_error(prefix + key, "unknown key");
  }
}

void check_schema(const json& j, const char* expected) {
  if (!j.contains("schema")) field_error("schema", std::string("missing (expected \"") + expected + "\")");
  if (!j["schema"].is_string() || j["schema"].get<std::string>() != expected) {
    field_error("schema", std::string("expected \"") + expected + "\", got " + j["schema"].dump());
  }
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number, got " + j.dump());
  const double v = j.get<double>();
  if (!std::isfinite(v)) field_error(field, "must be finite");
  return v;
}

double required_number(const json& obj, const std::string& key, const std::string& prefix = "") {
  if (!obj.contains(key)) field_error(prefix + key, "missing");
  return number(obj[key], prefix + key);
}

std::string string_value(const json& j, const std::string& field) {
  if (!j.is_string()) field_error(field, "expected a string, got " + j.dump());
  return j.get<std::string>();
}

std::vector<double> number_array(const json& j, const std::string& field, std::size_t n) {
  if (!j.is_array() || j.size() != n) {
    field_error(field, "expected an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Range range_value(const json& j, const std::string& field) {
  const auto v = number_array(j, field, 2);
  return {v[0], v[1]};
}

RobotSpec spec_from_json(const json& j, bool require_schema) {
  require_object(j, "<root>");
  if (require_schema || j.contains("schema")) check_schema(j, "robotspec-v1");
  reject_unknown(j,
                 {"schema", "name", "m_r", "g", "w", "l", "c", "t", "D", "H", "n_segments", "m_arm",
                  "arm_com_travel", "arm_mount", "base_links", "joint_limits", "reach_datum",
                  "wheel_half_width"},
                 "");

  RobotSpec s;
  if (j.contains("name")) s.name = string_value(j["name"], "name");
  s.robot_mass = required_number(j, "m_r");
  if (j.contains("g")) s.gravity = number(j["g"], "g");
  s.track_width = required_number(j, "w");
  s.base_length = required_number(j, "l");
  s.com_offset = required_number(j, "c");
  s.arm_setback = required_number(j, "t");
  s.max_reach = required_number(j, "D");
  s.max_height = required_number(j, "H");
  if (j.contains("n_segments")) {
    if (!j["n_segments"].is_number_integer()) field_error("n_segments", "expected an integer");
    s.segment_count = j["n_segments"].get<int>();
  }
  if (j.contains("m_arm")) s.arm_mass = number(j["m_arm"], "m_arm");
  if (j.contains("arm_com_travel")) s.arm_com_travel = number(j["arm_com_travel"], "arm_com_travel");
  if (j.contains("arm_mount")) {
    const auto v = number_array(j["arm_mount"], "arm_mount", 2);
    s.arm_mount = Eigen::Vector2d(v[0], v[1]);
  }
  if (j.contains("base_links")) {
    const auto& links = j["base_links"];
    if (!links.is_array()) field_error("base_links", "expected an array");
    for (std::size_t i = 0; i < links.size(); ++i) {
      const std::string prefix = "base_links[" + std::to_string(i) + "].";
      require_object(links[i], prefix.substr(0, prefix.size() - 1));
      reject_unknown(links[i], {"name", "mass", "com"}, prefix);
      BaseLink link;
      link.mass = required_number(links[i], "mass", prefix);
      if (!links[i].contains("com")) field_error(prefix + "com", "missing");
      const auto c = number_array(links[i]["com"], prefix + "com", 3);
      link.com = Eigen::Vector3d(c[0], c[1], c[2]);
      s.base_links.push_back(link);
    }
  }
  if (j.contains("joint_limits")) {
    const auto& jl = j["joint_limits"];
    const std::string p = "joint_limits.";
    require_object(jl, "joint_limits");
    reject_unknown(jl, {"arm", "lift", "wrist_yaw", "wrist_pitch", "wrist_roll", "wrist_yaw_stow"}, p);
    if (jl.contains("arm")) s.joint_limits.arm = range_value(jl["arm"], p + "arm");
    if (jl.contains("lift")) s.joint_limits.lift = range_value(jl["lift"], p + "lift");
    if (jl.contains("wrist_yaw")) s.joint_limits.wrist_yaw = range_value(jl["wrist_yaw"], p + "wrist_yaw");
    if (jl.contains("wrist_pitch")) {
      s.joint_limits.wrist_pitch = range_value(jl["wrist_pitch"], p + "wrist_pitch");
    }
    if (jl.contains("wrist_roll")) s.joint_limits.wrist_roll = range_value(jl["wrist_roll"], p + "wrist_roll");
    if (jl.contains("wrist_yaw_stow")) {
      s.joint_limits.wrist_yaw_stow = number(jl["wrist_yaw_stow"], p + "wrist_yaw_stow");
    }
  }
  if (j.contains("reach_datum")) {
    const auto d = string_value(j["reach_datum"], "reach_datum");
    if (d == "wheel_center") {
      s.reach_datum = ReachDatum::kWheelCenter;
    } else if (d == "wheel_outer_edge") {
      s.reach_datum = ReachDatum::kWheelOuterEdge;
    } else {
      field_error("reach_datum", "expected \"wheel_center\" or \"wheel_outer_edge\"");
    }
  }
  if (j.contains("wheel_half_width")) {
    s.wheel_half_width = number(j["wheel_half_width"], "wheel_half_width");
  }
  return s;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read '" + path.string() + "'");
  return os.str();
}

RobotSpec parse_robot_spec(std::string_view text) { return spec_from_json(parse_json(text), true); }

RobotSpec load_robot_spec(const std::filesystem::path& path) {
  return parse_robot_spec(read_text_file(path));
}

std::string robot_spec_to_json(const RobotSpec& s) {
  json j;
  j["schema"] = "robotspec-v1";
  if (!s.name.empty()) j["name"] = s.name;
  j["m_r"] = s.robot_mass;
  j["g"] = s.gravity;
  j["w"] = s.track_width;
  j["l"] = s.base_length;
  j["c"] = s.com_offset;
  j["t"] = s.arm_setback;
  j["D"] = s.max_reach;
  j["H"] = s.max_height;
  j["n_segments"] = s.segment_count;
  j["m_arm"] = s.arm_mass;
  j["arm_com_travel"] = s.arm_com_travel;
  if (s.arm_mount) j["arm_mount"] = {s.arm_mount->x(), s.arm_mount->y()};
  if (!s.base_links.empty()) {
    j["base_links"] = json::array();
    for (const auto& link : s.base_links) {
      j["base_links"].push_back({{"mass", link.mass}, {"com", {link.com.x(), link.com.y(), link.com.z()}}});
    }
  }
  json jl;
  const auto& lim = s.joint_limits;
  if (lim.arm) jl["arm"] = {lim.arm->min, lim.arm->max};
  if (lim.lift) jl["lift"] = {lim.lift->min, lim.lift->max};
  jl["wrist_yaw"] = {lim.wrist_yaw.min, lim.wrist_yaw.max};
  jl["wrist_pitch"] = {lim.wrist_pitch.min, lim.wrist_pitch.max};
  jl["wrist_roll"] = {lim.wrist_roll.min, lim.wrist_roll.max};
  if (lim.wrist_yaw_stow) jl["wrist_yaw_stow"] = *lim.wrist_yaw_stow;
  j["joint_limits"] = jl;
  j["reach_datum"] = s.reach_datum == ReachDatum::kWheelCenter ? "wheel_center" : "wheel_outer_edge";
  j["wheel_half_width"] = s.wheel_half_width;
  return j.dump(2) + "\n";
}

DesignProblem parse_design_problem(std::string_view text, const std::filesystem::path& base_dir) {
  const json j = parse_json(text);
  require_object(j, "<root>");
  check_schema(j, "designproblem-v1");
  reject_unknown(j, {"schema", "template", "template_path", "objective", "free", "frozen",
                     "constraints", "bounds"},
                 "");

  DesignProblem p;
  if (j.contains("template") == j.contains("template_path")) {
    field_error("template", "exactly one of 'template' or 'template_path' is required");
  }
  if (j.contains("template")) {
    p.base = spec_from_json(j["template"], false);
  } else {
    std::filesystem::path tp = string_value(j["template_path"], "template_path");
    if (tp.is_relative()) tp = base_dir / tp;
    p.base = load_robot_spec(tp);
  }

  if (!j.contains("objective")) field_error("objective", "missing");
  const auto& obj = j["objective"];
  require_object(obj, "objective");
  reject_unknown(obj, {"minimize", "maximize"}, "objective.");
  if (obj.size() != 1) field_error("objective", "expected exactly one of 'minimize' or 'maximize'");
  if (obj.contains("minimize")) {
    p.objective = {Sense::kMinimize, string_value(obj["minimize"], "objective.minimize")};
  } else {
    p.objective = {Sense::kMaximize, string_value(obj["maximize"], "objective.maximize")};
  }

  const auto names = [](const json& arr, const std::string& field) {
    if (!arr.is_array()) field_error(field, "expected an array of names");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(string_value(arr[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
  };
  if (j.contains("free") && j.contains("frozen")) field_error("free", "give either 'free' or 'frozen'");
  if (j.contains("free")) {
    p.free = names(j["free"], "free");
  } else if (j.contains("frozen")) {
    try {
      p.free = free_from_frozen(names(j["frozen"], "frozen"));
    } catch (const Error& e) {
      field_error("frozen", e.what());
    }
  } else if (p.objective.target != "payload") {
    p.free = {p.objective.target};
  } else {
    field_error("free", "required when maximizing payload");
  }

  if (j.contains("constraints")) {
    const auto& cs = j["constraints"];
    if (!cs.is_array()) field_error("constraints", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string prefix = "constraints[" + std::to_string(i) + "].";
      require_object(cs[i], prefix.substr(0, prefix.size() - 1));
      reject_unknown(cs[i], {"metric", "op", "value", "height", "reach"}, prefix);
      DesignConstraint c;
      if (!cs[i].contains("metric")) field_error(prefix + "metric", "missing");
      c.metric = string_value(cs[i]["metric"], prefix + "metric");
      if (!cs[i].contains("op")) field_error(prefix + "op", "missing");
      const auto op = string_value(cs[i]["op"], prefix + "op");
      if (op == ">=") {
        c.cmp = Comparator::kAtLeast;
      } else if (op == "<=") {
        c.cmp = Comparator::kAtMost;
      } else {
        field_error(prefix + "op", "expected \">=\" or \"<=\"");
      }
      c.value = required_number(cs[i], "value", prefix);
      if (cs[i].contains("height") && cs[i].contains("reach")) {
        field_error(prefix + "height", "give either 'height' or 'reach'");
      }
      if (cs[i].contains("height")) c.location = number(cs[i]["height"], prefix + "height");
      if (cs[i].contains("reach")) c.location = number(cs[i]["reach"], prefix + "reach");
      p.constraints.push_back(std::move(c));
    }
  }

  if (j.contains("bounds")) {
    const auto& b = j["bounds"];
    require_object(b, "bounds");
    for (const auto& [key, value] : b.items()) p.bounds[key] = range_value(value, "bounds." + key);
  }
  return p;
}

DesignProblem load_design_problem(const std::filesystem::path& path) {
  return parse_design_problem(read_text_file(path), path.parent_path());
}

std::vector<TaskRequirement> parse_task_manifest(std::string_view text) {
  const json j = parse_json(text);
  require_object(j, "<root>");
  check_schema(j, "taskreq-v1");
  reject_unknown(j, {"schema", "requirements", "notes"}, "");
  if (!j.contains("requirements")) field_error("requirements", "missing");
  const auto& rs = j["requirements"];
  if (!rs.is_array()) field_error("requirements", "expected an array");

  std::vector<TaskRequirement> out;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const std::string prefix = "requirements[" + std::to_string(i) + "].";
    require_object(rs[i], prefix.substr(0, prefix.size() - 1));
    reject_unknown(rs[i], {"name", "kind", "magnitude", "height", "reach", "source"}, prefix);
    TaskRequirement r;
    r.name = rs[i].contains("name") ? string_value(rs[i]["name"], prefix + "name")
                                    : "requirement " + std::to_string(i + 1);
    if (!rs[i].contains("kind")) field_error(prefix + "kind", "missing");
    try {
      r.kind = parse_load_kind(string_value(rs[i]["kind"], prefix + "kind"));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParse) throw;
      field_error(prefix + "kind", e.what());
    }
    r.magnitude = required_number(rs[i], "magnitude", prefix);
    if (r.magnitude < 0.0) field_error(prefix + "magnitude", "must be >= 0");
    if (r.kind == LoadKind::kPayload) {
      if (rs[i].contains("height")) field_error(prefix + "height", "payload requirements take 'reach'");
      if (rs[i].contains("reach")) r.location = number(rs[i]["reach"], prefix + "reach");
    } else {
      if (rs[i].contains("reach")) field_error(prefix + "reach", "force requirements take 'height'");
      r.location = required_number(rs[i], "height", prefix);
    }
    if (rs[i].contains("source")) string_value(rs[i]["source"], prefix + "source");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TaskRequirement> load_task_manifest(const std::filesystem::path& path) {
  return parse_task_manifest(read_text_file(path));
}

}  // namespace stretchstab
