// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stretchstab/design.hpp"
#include "stretchstab/feasibility.hpp"
#include "stretchstab/robot_model.hpp"

namespace stretchstab {

// JSON documents tagged by a "schema" key: robotspec-v1, designproblem-v1,
// taskreq-v1. Lengths in m, masses in kg, angles in rad. Unknown keys are
// rejected. Syntax errors report line and column, value errors the field.
// Everything throws Error(kParse); unreadable files throw Error(kIo).

std::string read_text_file(const std::filesystem::path& path);

RobotSpec parse_robot_spec(std::string_view text);
RobotSpec load_robot_spec(const std::filesystem::path& path);
std::string robot_spec_to_json(const RobotSpec& spec);

// A relative "template_path" resolves against `base_dir`.
DesignProblem parse_design_problem(std::string_view text, const std::filesystem::path& base_dir);
DesignProblem load_design_problem(const std::filesystem::path& path);

std::vector<TaskRequirement> parse_task_manifest(std::string_view text);
std::vector<TaskRequirement> load_task_manifest(const std::filesystem::path& path);

}  // namespace stretchstab
