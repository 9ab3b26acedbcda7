// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace stretchstab {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidSpec,
  kOutOfLimits,     // configuration outside joint limits
  kOutOfWorkspace,  // location outside the H x D x W box
  kUnbounded,
  kInfeasible,
  kUnsupported,
  kParse,
  kIo,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stretchstab
