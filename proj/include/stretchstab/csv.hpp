// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace stretchstab {

// Six significant digits, shortest form, '.' separator regardless of locale.
std::string format_number(double v);
// Fixed notation with `decimals` digits after the point.
std::string format_fixed(double v, int decimals);

// Minimal CSV writer: LF endings, cells containing ',', '"' or newlines are
// quoted.
class CsvWriter {
 public:
  void comment(std::string_view text);
  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return out_; }

 private:
  std::string out_;
};

}  // namespace stretchstab
