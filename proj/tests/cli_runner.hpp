// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace stretchstab::testing {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI through the shell. stderr is dropped, or merged into `out`.
inline CliResult run_cli(const std::string& args, bool keep_stderr = false) {
  const std::string cmd =
      std::string("'") + STRETCHSTAB_CLI_PATH + "' " + args + (keep_stderr ? " 2>&1" : " 2>/dev/null");
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string data_file(const std::string& name) {
  return std::string("'") + STRETCHSTAB_TEST_DATA_DIR + "/" + name + "'";
}

}  // namespace stretchstab::testing
