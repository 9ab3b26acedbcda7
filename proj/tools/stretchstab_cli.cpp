// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the stretchstab C API.
//
// Exit status: 0 success / all checks pass, 1 domain failure (invalid spec,
// out of workspace, infeasible, failed check), 2 I/O or parse failure.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "stretchstab/stretchstab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;

// Raised inside a subcommand to leave with a given exit status.
struct Exit {
  int code;
};

[[noreturn]] void die(int code, const std::string& message) {
  std::cerr << "stretchstab: " << message << "\n";
  throw Exit{code};
}

void check(ss_status status, const std::string& context = "") {
  if (status == SS_OK) return;
  std::string msg = ss_status_name(status);
  const std::string detail = ss_last_error();
  if (!context.empty()) msg = context + ": " + msg;
  if (!detail.empty()) msg += ": " + detail;
  die(ss_status_exit_code(status), msg);
}

struct CString {
  char* ptr = nullptr;
  ~CString() { ss_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

struct SpecDeleter {
  void operator()(ss_spec* p) const { ss_spec_free(p); }
};
using SpecPtr = std::unique_ptr<ss_spec, SpecDeleter>;

std::string number(double v, int precision = 6) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

std::string fixed(double v, int decimals) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(kExitIo, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  const std::string data = os.str();

  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    die(kExitIo, "cannot digest '" + path + "'");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 0xf];
  }
  return hex;
}

// Provenance carried as comment lines at the top of every CSV the tool
// emits. Only content-derived fields appear so identical inputs give
// identical bytes.
struct RunRecord {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // basename, sha256
  std::string parameters;

  void add_input(const std::string& path) {
    inputs.emplace_back(std::filesystem::path(path).filename().string(), sha256_file(path));
  }

  std::string header() const {
    std::string out = std::string("# tool-version: stretchstab ") + ss_version() + "\n";
    out += "# command: " + command + "\n";
    for (const auto& [name, digest] : inputs) out += "# input: " + name + " sha256=" + digest + "\n";
    if (!parameters.empty()) out += "# parameters: " + parameters + "\n";
    return out;
  }
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

// Aligned plain-text rendering of a CSV body.
std::string render_table(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  std::vector<std::size_t> width;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (width.size() < cells.size()) width.resize(cells.size(), 0);
    for (std::size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], cells[i].size());
    rows.push_back(std::move(cells));
  }
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string text;
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      if (i) text += "  ";
      text += rows[r][i];
      if (i + 1 < rows[r].size()) text += std::string(width[i] - rows[r][i].size(), ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text + "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i ? 2 : 0);
      out += std::string(total, '-') + "\n";
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) die(kExitIo, "cannot write to standard output");
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) die(kExitIo, "cannot open '" + out_path + "' for writing");
  out << text;
  out.close();
  if (!out) die(kExitIo, "cannot write '" + out_path + "'");
}

SpecPtr load_spec(const std::string& path) {
  if (path.empty()) die(kExitIo, "no spec file given (use --spec PATH)");
  ss_spec* raw = nullptr;
  check(ss_spec_load(path.c_str(), &raw), path);
  return SpecPtr(raw);
}

void require_valid_spec(const ss_spec* spec) {
  int valid = 0;
  CString report;
  check(ss_spec_validate(spec, &valid, &report.ptr));
  if (!valid) die(kExitDomain, "invalid spec:\n" + report.str());
}

ss_kind parse_kind(const std::string& text) {
  ss_kind kind{};
  check(ss_kind_parse(text.c_str(), &kind));
  return kind;
}

std::vector<double> parse_numbers(const std::string& text, const std::string& what, char sep = ',') {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(sep, start), text.size());
    const std::string item = text.substr(start, end - start);
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      die(kExitDomain, "malformed " + what + " '" + text + "'");
    }
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

struct Grid {
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 0;
};

Grid parse_grid(const std::string& text) {
  const auto parts = parse_numbers(text, "grid (expected MIN:MAX:N)", ':');
  if (parts.size() != 3) die(kExitDomain, "malformed grid '" + text + "' (expected MIN:MAX:N)");
  if (!(parts[2] >= 1.0) || parts[2] != std::floor(parts[2])) {
    die(kExitDomain, "grid '" + text + "' needs a positive whole number of points");
  }
  return {parts[0], parts[1], static_cast<std::size_t>(parts[2])};
}

double length_scale(const std::string& units) { return units == "cm" ? 100.0 : 1.0; }

struct Options {
  std::string spec;
  std::string format = "table";
  std::string units = "m";
  std::string out;
};

// ------------------------------------------------------------ commands --

int cmd_validate(const Options& opt) {
  auto spec = load_spec(opt.spec);
  int valid = 0;
  CString report;
  check(ss_spec_validate(spec.get(), &valid, &report.ptr));
  std::cout << report.str();
  return valid ? kExitOk : kExitDomain;
}

int cmd_fk(const Options& opt, const std::string& q_text) {
  auto spec = load_spec(opt.spec);
  const auto q = parse_numbers(q_text, "joint vector (expected q_a,q_m,q_l)");
  if (q.size() != 3) die(kExitDomain, "--q needs three values q_a,q_m,q_l");
  double pose[3];
  check(ss_forward_kinematics(spec.get(), q.data(), pose));
  const double s = length_scale(opt.units);
  if (opt.format == "csv") {
    std::cout << "x_e,y_e,z_e\n" << number(pose[0]) << "," << number(pose[1]) << "," << number(pose[2]) << "\n";
  } else {
    std::cout << "x_e = " << number(pose[0] * s) << " " << opt.units << "\n"
              << "y_e = " << number(pose[1] * s) << " " << opt.units << "\n"
              << "z_e = " << number(pose[2] * s) << " " << opt.units << "\n";
  }
  return kExitOk;
}

int cmd_ik(const Options& opt, const std::string& pose_text) {
  auto spec = load_spec(opt.spec);
  const auto pose = parse_numbers(pose_text, "pose (expected x,y,z)");
  if (pose.size() != 3) die(kExitDomain, "--pose needs three values x,y,z");
  double q[3];
  check(ss_inverse_kinematics(spec.get(), pose.data(), q));
  const double s = length_scale(opt.units);
  if (opt.format == "csv") {
    std::cout << "q_a,q_m,q_l\n" << number(q[0]) << "," << number(q[1]) << "," << number(q[2]) << "\n";
  } else {
    std::cout << "q_a = " << number(q[0] * s) << " " << opt.units << "\n"
              << "q_m = " << number(q[1] * s) << " " << opt.units << "\n"
              << "q_l = " << number(q[2] * s) << " " << opt.units << "\n";
  }
  return kExitOk;
}

int cmd_analyze(const Options& opt, const std::string& kind_text, std::optional<double> height,
                std::optional<double> reach) {
  auto spec = load_spec(opt.spec);
  require_valid_spec(spec.get());
  const ss_kind kind = parse_kind(kind_text);
  std::optional<double> location;
  if (kind == SS_KIND_PAYLOAD) {
    if (height) die(kExitDomain, "payload takes --reach, not --height");
    location = reach;
  } else {
    if (reach) die(kExitDomain, std::string(kind_text) + " takes --height, not --reach");
    if (!height) die(kExitDomain, kind_text + " needs --height");
    location = height;
  }

  double value = 0.0;
  int unbounded = 0;
  check(ss_analyze(spec.get(), kind, location ? &*location : nullptr, &value, &unbounded));
  if (unbounded) {
    const std::string where = kind == SS_KIND_PAYLOAD ? "reach=" : "h=";
    die(kExitDomain, "unbounded at " + where + number(location.value_or(0.0)));
  }

  const char* unit = kind == SS_KIND_PAYLOAD ? "kg" : "N";
  if (opt.format == "csv") {
    RunRecord rec{"analyze", {}, "kind=" + kind_text};
    rec.add_input(opt.spec);
    std::string body = rec.header() + "kind,location,value\n";
    body += kind_text + "," + (location ? number(*location) : std::string("D")) + "," + number(value) + "\n";
    emit(body, opt.out);
  } else {
    emit(fixed(value, 2) + " " + unit + "\n", opt.out);
  }
  return kExitOk;
}

int cmd_curve(const Options& opt, const std::string& kind_text, const std::string& grid_text) {
  auto spec = load_spec(opt.spec);
  require_valid_spec(spec.get());
  const ss_kind kind = parse_kind(kind_text);
  const Grid grid = parse_grid(grid_text);

  CString csv;
  check(ss_curve_csv(spec.get(), kind, grid.min, grid.max, grid.points, &csv.ptr));
  RunRecord rec{"curve", {}, "kind=" + kind_text + " grid=" + grid_text};
  rec.add_input(opt.spec);
  emit(opt.format == "csv" ? rec.header() + csv.str() : render_table(csv.str()), opt.out);
  return kExitOk;
}

int cmd_sweep(const Options& opt, const std::vector<std::string>& vary,
              const std::vector<std::string>& metrics, unsigned threads) {
  auto spec = load_spec(opt.spec);
  if (vary.empty() || vary.size() > 2) die(kExitDomain, "sweep needs one or two --vary FIELD=...");
  if (metrics.empty()) die(kExitDomain, "sweep needs at least one --metric");

  ss_sweep* raw = nullptr;
  check(ss_sweep_create(spec.get(), &raw));
  std::unique_ptr<ss_sweep, void (*)(ss_sweep*)> sweep(raw, ss_sweep_free);

  std::string params;
  for (const auto& v : vary) {
    const auto eq = v.find('=');
    if (eq == std::string::npos || eq == 0) die(kExitDomain, "malformed --vary '" + v + "' (FIELD=MIN:MAX:N or FIELD=v1,v2,...)");
    const std::string field = v.substr(0, eq);
    const std::string rhs = v.substr(eq + 1);
    if (rhs.find(':') != std::string::npos) {
      const Grid g = parse_grid(rhs);
      check(ss_sweep_add_grid(sweep.get(), field.c_str(), g.min, g.max, g.points));
    } else {
      const auto values = parse_numbers(rhs, "value list");
      check(ss_sweep_add_values(sweep.get(), field.c_str(), values.data(), values.size()));
    }
    params += (params.empty() ? "" : " ") + std::string("vary=") + v;
  }
  for (const auto& m : metrics) {
    const auto at = m.find('@');
    const ss_kind kind = parse_kind(m.substr(0, at));
    std::optional<double> loc;
    if (at != std::string::npos) {
      const auto values = parse_numbers(m.substr(at + 1), "metric location");
      if (values.size() != 1) die(kExitDomain, "malformed --metric '" + m + "'");
      loc = values[0];
    }
    check(ss_sweep_add_metric(sweep.get(), kind, loc ? &*loc : nullptr));
    params += " metric=" + m;
  }

  CString csv;
  check(ss_sweep_run_csv(sweep.get(), threads, &csv.ptr));
  RunRecord rec{"sweep", {}, params};
  rec.add_input(opt.spec);
  emit(opt.format == "csv" ? rec.header() + csv.str() : render_table(csv.str()), opt.out);
  return kExitOk;
}

int cmd_solve(const Options& opt, const std::string& problem_path) {
  if (problem_path.empty()) die(kExitIo, "no design problem given");
  ss_problem* raw_problem = nullptr;
  check(ss_problem_load(problem_path.c_str(), &raw_problem), problem_path);
  std::unique_ptr<ss_problem, void (*)(ss_problem*)> problem(raw_problem, ss_problem_free);

  ss_solution* raw_solution = nullptr;
  check(ss_solve(problem.get(), &raw_solution));
  std::unique_ptr<ss_solution, void (*)(ss_solution*)> solution(raw_solution, ss_solution_free);

  CString csv;
  check(ss_solution_csv(solution.get(), &csv.ptr));
  if (opt.format == "csv") {
    RunRecord rec{"solve", {}, ""};
    rec.add_input(problem_path);
    emit(rec.header() + csv.str(), opt.out);
  } else {
    double value = 0.0;
    check(ss_solution_objective(solution.get(), &value));
    const std::string target = ss_solution_objective_target(solution.get());
    const bool mass = target == "m_r" || target == "payload";
    std::string text = target + " = " + fixed(value, 2) + (mass ? " kg" : " m") + "\n\n";
    emit(text + render_table(csv.str()), opt.out);
  }
  return kExitOk;
}

int cmd_check(const Options& opt, const std::string& manifest_path) {
  auto spec = load_spec(opt.spec);
  if (manifest_path.empty()) die(kExitIo, "no requirement manifest given");
  ss_manifest* raw = nullptr;
  check(ss_manifest_load(manifest_path.c_str(), &raw), manifest_path);
  std::unique_ptr<ss_manifest, void (*)(ss_manifest*)> manifest(raw, ss_manifest_free);

  CString csv;
  std::size_t passed = 0, failed = 0;
  check(ss_check_manifest(spec.get(), manifest.get(), &csv.ptr, &passed, &failed));
  if (opt.format == "csv") {
    RunRecord rec{"check", {}, ""};
    rec.add_input(opt.spec);
    rec.add_input(manifest_path);
    emit(rec.header() + csv.str(), opt.out);
  } else {
    emit(render_table(csv.str()) + "\n" + std::to_string(passed) + "/" +
             std::to_string(passed + failed) + " requirements pass\n",
         opt.out);
  }
  return failed == 0 ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static tipping limits and design trade-offs for Stretch-style mobile manipulators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("stretchstab ") + ss_version());

  Options opt;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"table", "csv"}));
    sub->add_option("--units", opt.units, "Length unit for displayed values (files stay SI)")
        ->check(CLI::IsMember({"m", "cm"}));
    sub->add_option("--out", opt.out, "Write output to PATH instead of standard output");
  };

  auto* validate = app.add_subcommand("validate", "Check a robot spec against its invariants");
  validate->add_option("spec,--spec", opt.spec, "Robot spec (robotspec-v1)");
  add_common(validate);

  std::string q_text, pose_text;
  auto* fk = app.add_subcommand("fk", "Forward kinematics of (q_a, q_m, q_l)");
  fk->add_option("--spec", opt.spec, "Robot spec (robotspec-v1)")->required();
  fk->add_option("--q", q_text, "Joint values q_a,q_m,q_l in m")->required();
  add_common(fk);

  auto* ik = app.add_subcommand("ik", "Inverse kinematics of an end-of-arm position");
  ik->add_option("--spec", opt.spec, "Robot spec (robotspec-v1)")->required();
  ik->add_option("--pose", pose_text, "Position x,y,z in m")->required();
  add_common(ik);

  std::string kind_text;
  std::optional<double> height, reach;
  auto* analyze = app.add_subcommand("analyze", "Closed-form capability at one location");
  analyze->add_option("--spec", opt.spec, "Robot spec (robotspec-v1)")->required();
  analyze->add_option("--kind", kind_text, "pull, push, backpush or payload")->required();
  analyze->add_option("--height", height, "Arm height h in m (force kinds)");
  analyze->add_option("--reach", reach, "Reach beyond the drive wheel in m (payload; default D)");
  add_common(analyze);

  std::string grid_text;
  auto* curve = app.add_subcommand("curve", "Capability curve over height or reach");
  curve->add_option("--spec", opt.spec, "Robot spec (robotspec-v1)")->required();
  curve->add_option("--kind", kind_text, "pull, push, backpush or payload")->required();
  curve->add_option("--grid", grid_text, "MIN:MAX:N sample grid in m")->required();
  add_common(curve);

  std::vector<std::string> vary, metrics;
  unsigned threads = 1;
  auto* sweep = app.add_subcommand("sweep", "Sweep one or two spec fields");
  sweep->add_option("--spec", opt.spec, "Template robot spec (robotspec-v1)")->required();
  sweep->add_option("--vary", vary, "FIELD=MIN:MAX:N or FIELD=v1,v2,... (at most two)")->required();
  sweep->add_option("--metric", metrics, "KIND or KIND@LOCATION, e.g. payload, pull@0.5")->required();
  sweep->add_option("--threads", threads, "Worker threads (output is identical for any value)");
  add_common(sweep);

  std::string problem_path;
  auto* solve = app.add_subcommand("solve", "Solve an inverse design problem");
  solve->add_option("problem,--problem", problem_path, "Design problem (designproblem-v1)");
  add_common(solve);

  std::string manifest_path;
  auto* check_cmd = app.add_subcommand("check", "Check task requirements against a spec");
  check_cmd->add_option("spec,--spec", opt.spec, "Robot spec (robotspec-v1)");
  check_cmd->add_option("manifest,--manifest", manifest_path, "Requirement manifest (taskreq-v1)");
  add_common(check_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitIo;
  }

  try {
    if (*validate) return cmd_validate(opt);
    if (*fk) return cmd_fk(opt, q_text);
    if (*ik) return cmd_ik(opt, pose_text);
    if (*analyze) return cmd_analyze(opt, kind_text, height, reach);
    if (*curve) return cmd_curve(opt, kind_text, grid_text);
    if (*sweep) return cmd_sweep(opt, vary, metrics, threads);
    if (*solve) return cmd_solve(opt, problem_path);
    if (*check_cmd) return cmd_check(opt, manifest_path);
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitIo;
}
