// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "stretchstab/csv.hpp"

#include <charconv>
#include <cmath>

namespace stretchstab {

namespace {

std::string to_chars_or_special(double v, std::chars_format fmt, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, fmt, precision);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string format_number(double v) {
  return to_chars_or_special(v, std::chars_format::general, 6);
}

std::string format_fixed(double v, int decimals) {
  return to_chars_or_special(v, std::chars_format::fixed, decimals);
}

void CsvWriter::comment(std::string_view text) {
  out_ += "# ";
  out_ += text;
  out_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ',';
    const auto& cell = cells[i];
    if (cell.find_first_of(",\"\n") == std::string::npos) {
      out_ += cell;
      continue;
    }
    out_ += '"';
    for (char ch : cell) {
      if (ch == '"') out_ += '"';
      out_ += ch;
    }
    out_ += '"';
  }
  out_ += '\n';
}

}  // namespace stretchstab
