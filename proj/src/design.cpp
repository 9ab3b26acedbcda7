// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "stretchstab/design.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "stretchstab/csv.hpp"
#include "stretchstab/error.hpp"
#include "stretchstab/root_find.hpp"

namespace stretchstab {

namespace {

constexpr std::array<std::string_view, 11> kScalarFields = {
    "m_r", "g", "w", "l", "c", "t", "D", "H", "m_arm", "arm_com_travel", "wheel_half_width"};

// Byte order; the coordinate-descent sweep order.
constexpr std::array<std::string_view, 6> kDesignVariables = {"D", "c", "l", "m_r", "t", "w"};

double* field_ptr(RobotSpec& spec, std::string_view key) {
  if (key == "m_r") return &spec.robot_mass;
  if (key == "g") return &spec.gravity;
  if (key == "w") return &spec.track_width;
  if (key == "l") return &spec.base_length;
  if (key == "c") return &spec.com_offset;
  if (key == "t") return &spec.arm_setback;
  if (key == "D") return &spec.max_reach;
  if (key == "H") return &spec.max_height;
  if (key == "m_arm") return &spec.arm_mass;
  if (key == "arm_com_travel") return &spec.arm_com_travel;
  if (key == "wheel_half_width") return &spec.wheel_half_width;
  return nullptr;
}

bool is_design_variable(std::string_view key) {
  return std::find(kDesignVariables.begin(), kDesignVariables.end(), key) !=
         kDesignVariables.end();
}

bool is_capability_metric(std::string_view metric) {
  return metric == "pull" || metric == "push" || metric == "backpush" || metric == "payload";
}

}  // namespace

std::span<const std::string_view> scalar_fields() { return kScalarFields; }

double get_field(const RobotSpec& spec, std::string_view key) {
  double* p = field_ptr(const_cast<RobotSpec&>(spec), key);
  if (!p) throw Error(ErrorCode::kInvalidArgument, "unknown spec field '" + std::string(key) + "'");
  return *p;
}

void set_field(RobotSpec& spec, std::string_view key, double value) {
  double* p = field_ptr(spec, key);
  if (!p) throw Error(ErrorCode::kInvalidArgument, "unknown spec field '" + std::string(key) + "'");
  *p = value;
}

double widen_base_extension_gain(double width_increase, int segment_count) {
  if (!std::isfinite(width_increase) || width_increase < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "width increase must be >= 0");
  }
  if (segment_count < 1) throw Error(ErrorCode::kInvalidArgument, "n_segments must be >= 1");
  return static_cast<double>(segment_count) * width_increase;
}

// ---------------------------------------------------------------- sweeps --

SweepAxis grid_axis(std::string field, double min, double max, std::size_t steps) {
  if (steps == 0) throw Error(ErrorCode::kInvalidArgument, "sweep grid for '" + field + "' has zero steps");
  return {std::move(field), linear_grid(min, max, steps)};
}

std::string SweepMetric::column() const {
  std::string name = to_string(kind);
  name += kind == LoadKind::kPayload ? "_kg" : "_N";
  if (location) name += "@" + format_number(*location);
  return name;
}

namespace {

void validate_request(const SweepRequest& req) {
  if (req.axes.empty() || req.axes.size() > 2) {
    throw Error(ErrorCode::kInvalidArgument, "a sweep needs one or two swept fields");
  }
  for (std::size_t i = 0; i < req.axes.size(); ++i) {
    const auto& axis = req.axes[i];
    if (!field_ptr(const_cast<RobotSpec&>(req.base), axis.field)) {
      throw Error(ErrorCode::kInvalidArgument, "cannot sweep unknown field '" + axis.field + "'");
    }
    if (axis.values.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "sweep grid for '" + axis.field + "' is empty");
    }
    for (double v : axis.values) {
      if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "sweep values must be finite");
    }
    if (i == 1 && axis.field == req.axes[0].field) {
      throw Error(ErrorCode::kInvalidArgument, "field '" + axis.field + "' swept twice");
    }
  }
  if (req.metrics.empty()) throw Error(ErrorCode::kInvalidArgument, "a sweep needs at least one metric");
  for (const auto& m : req.metrics) {
    if (m.kind != LoadKind::kPayload && !m.location) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(to_string(m.kind)) + " metric needs a height");
    }
  }
}

SweepRow evaluate_row(const SweepRequest& req, std::vector<double> params) {
  SweepRow row;
  RobotSpec spec = req.base;
  for (std::size_t i = 0; i < params.size(); ++i) set_field(spec, req.axes[i].field, params[i]);
  row.params = std::move(params);
  row.metrics.assign(req.metrics.size(), Limit::finite(std::numeric_limits<double>::quiet_NaN()));

  const auto report = validate_spec(spec);
  if (!report.valid()) {
    row.valid = false;
    for (const auto& issue : report.issues) {
      if (!row.note.empty()) row.note += "; ";
      row.note += issue.message;
    }
    return row;
  }
  for (std::size_t k = 0; k < req.metrics.size(); ++k) {
    try {
      row.metrics[k] = closed_form_capability(spec, req.metrics[k].kind, req.metrics[k].location);
    } catch (const Error& e) {
      row.valid = false;
      if (!row.note.empty()) row.note += "; ";
      row.note += req.metrics[k].column() + ": " + e.what();
    }
  }
  return row;
}

}  // namespace

SweepTable run_sweep(const SweepRequest& request, unsigned threads) {
  validate_request(request);

  SweepTable table;
  for (const auto& axis : request.axes) table.param_names.push_back(axis.field);
  for (const auto& m : request.metrics) table.metric_names.push_back(m.column());

  const std::size_t outer = request.axes[0].values.size();
  const std::size_t inner = request.axes.size() > 1 ? request.axes[1].values.size() : 1;
  const std::size_t total = outer * inner;
  table.rows.resize(total);

  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::vector<double> params{request.axes[0].values[idx / inner]};
      if (request.axes.size() > 1) params.push_back(request.axes[1].values[idx % inner]);
      table.rows[idx] = evaluate_row(request, std::move(params));
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(total, 1));
  if (workers == 1) {
    work(0, total);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(total, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }
  return table;
}

std::string SweepTable::to_csv() const {
  CsvWriter csv;
  std::vector<std::string> header = param_names;
  header.insert(header.end(), metric_names.begin(), metric_names.end());
  header.push_back("valid");
  header.push_back("note");
  csv.row(header);
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    for (double p : row.params) cells.push_back(format_number(p));
    for (const auto& m : row.metrics) {
      if (std::isnan(m.value)) {
        cells.emplace_back();
      } else {
        cells.push_back(m.unbounded ? std::string("unbounded") : format_number(m.value));
      }
    }
    cells.push_back(row.valid ? "1" : "0");
    cells.push_back(row.note);
    csv.row(cells);
  }
  return csv.str();
}

// ---------------------------------------------------------- inverse design --

std::span<const std::string_view> design_variables() { return kDesignVariables; }

std::vector<std::string> free_from_frozen(std::span<const std::string> frozen) {
  for (const auto& f : frozen) {
    if (!is_design_variable(f)) {
      throw Error(ErrorCode::kInvalidArgument, "unknown design variable '" + f + "' in frozen list");
    }
  }
  std::vector<std::string> out;
  for (auto v : kDesignVariables) {
    if (std::find(frozen.begin(), frozen.end(), v) == frozen.end()) out.emplace_back(v);
  }
  return out;
}

std::string DesignConstraint::label() const {
  std::string s = metric;
  if (location) s += "@" + format_number(*location);
  s += cmp == Comparator::kAtLeast ? ">=" : "<=";
  s += format_number(value);
  return s;
}

double evaluate_metric(const RobotSpec& spec, const std::string& metric,
                       std::optional<double> location) {
  if (!is_capability_metric(metric)) return get_field(spec, metric);
  try {
    const Limit lim = closed_form_capability(spec, parse_load_kind(metric), location);
    return lim.value;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kOutOfWorkspace) return 0.0;
    throw;
  }
}

namespace {

// How a metric responds to one design variable with everything else fixed.
struct Shape {
  int direction = 0;    // +1 non-decreasing, -1 non-increasing, 0 independent
  bool affine = false;  // exact two-point inversion applies
};

Shape shape_of(const std::string& metric, bool at_full_reach, std::string_view var) {
  if (!is_capability_metric(metric)) return metric == var ? Shape{+1, true} : Shape{};
  if (var == "m_r") return {+1, true};
  if (metric == "payload") {
    if (var == "c") return {+1, true};
    if (var == "w") return {+1, false};
    if (var == "l" || var == "t") return {-1, false};
    // At full reach the moment arm grows with D; at a fixed reach D only
    // decides whether the point is reachable.
    if (var == "D") return {at_full_reach ? -1 : +1, false};
    return {};
  }
  if (metric == "backpush") {
    if (var == "c") return {-1, true};
    if (var == "l") return {+1, true};
    return {};
  }
  // pull / push
  if (var == "c" || var == "w") return {+1, true};
  if (var == "l") return {-1, false};
  return {};
}

Shape shape_of(const DesignConstraint& c, std::string_view var) {
  return shape_of(c.metric, !c.location.has_value(), var);
}

// Margin in the metric's unit; +inf when an unbounded capability meets a
// lower bound.
double margin_of(const DesignConstraint& c, double achieved) {
  return c.cmp == Comparator::kAtLeast ? achieved - c.value : c.value - achieved;
}

bool satisfied(const DesignConstraint& c, const RobotSpec& spec) {
  return margin_of(c, evaluate_metric(spec, c.metric, c.location)) >= 0.0;
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo <= hi); }
};

class Solver {
 public:
  explicit Solver(const DesignProblem& problem) : problem_(problem), spec_(problem.base) {
    check_problem();
    vars_ = problem.free;
    std::sort(vars_.begin(), vars_.end());
    for (const auto& v : vars_) search_[v] = search_bounds(v);
  }

  DesignSolution run() {
    int iterations = 0;
    std::string binding;
    for (; iterations < kMaxPasses; ) {
      ++iterations;
      bool changed = false;
      for (const auto& v : vars_) {
        std::string why;
        const Interval iv = feasible_interval(v, &why);
        if (iv.empty()) {
          binding = why;
          continue;
        }
        const double old = get_field(spec_, v);
        const double next = choose(v, iv, old);
        if (std::abs(next - old) > 1e-12 * std::max(std::abs(old), 1.0)) changed = true;
        set_field(spec_, v, next);
      }
      if (!changed) break;
    }
    return finish(iterations, binding);
  }

 private:
  static constexpr int kMaxPasses = 100;

  void check_problem() const {
    const auto& p = problem_;
    if (p.free.empty() || p.free.size() > 2) {
      throw Error(ErrorCode::kUnsupported, "design problems need one or two free variables");
    }
    for (std::size_t i = 0; i < p.free.size(); ++i) {
      if (!is_design_variable(p.free[i])) {
        throw Error(ErrorCode::kInvalidArgument, "'" + p.free[i] + "' is not a design variable");
      }
      if (i == 1 && p.free[0] == p.free[1]) {
        throw Error(ErrorCode::kInvalidArgument, "free variable listed twice");
      }
    }
    const auto& t = p.objective.target;
    const bool ok = p.objective.sense == Sense::kMinimize
                        ? (t == "w" || t == "m_r" || t == "l")
                        : (t == "D" || t == "payload");
    if (!ok) {
      throw Error(ErrorCode::kInvalidArgument,
                  "objective must minimize w, m_r or l, or maximize D or payload");
    }
    if (t != "payload" && std::find(p.free.begin(), p.free.end(), t) == p.free.end()) {
      throw Error(ErrorCode::kInvalidArgument, "objective variable '" + t + "' is frozen");
    }
    for (const auto& c : p.constraints) {
      if (!is_capability_metric(c.metric) && !is_design_variable(c.metric)) {
        throw Error(ErrorCode::kInvalidArgument, "unknown constraint metric '" + c.metric + "'");
      }
      if (!std::isfinite(c.value)) {
        throw Error(ErrorCode::kInvalidArgument, "constraint value must be finite");
      }
      if ((c.metric == "pull" || c.metric == "push" || c.metric == "backpush") && !c.location) {
        throw Error(ErrorCode::kInvalidArgument, c.metric + " constraint needs a height");
      }
    }
    if (!p.base.base_links.empty() &&
        std::find(p.free.begin(), p.free.end(), "m_r") != p.free.end()) {
      throw Error(ErrorCode::kUnsupported, "m_r cannot be freed when base_links fix the mass budget");
    }
    require_valid(p.base);
  }

  Interval search_bounds(const std::string& v) const {
    Interval iv;
    if (auto it = problem_.bounds.find(v); it != problem_.bounds.end()) {
      iv = {it->second.min, it->second.max};
    } else {
      const double v0 = get_field(problem_.base, v);
      iv = v0 > 0.0 ? Interval{0.1 * v0, 10.0 * v0} : Interval{0.0, 1.0};
    }
    if (iv.empty() || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      throw Error(ErrorCode::kInvalidArgument, "search bounds for '" + v + "' are not a finite interval");
    }
    return iv;
  }

  // Search bounds narrowed to where the spec stays valid.
  Interval valid_bounds(const std::string& v) const {
    Interval iv = search_.at(v);
    const double tiny = 1e-12 * std::max(std::abs(iv.hi), 1e-12);
    if (v == "t") {
      iv.lo = std::max(iv.lo, 0.0);
    } else {
      iv.lo = std::max(iv.lo, tiny);
    }
    if (v == "c") iv.hi = std::min(iv.hi, spec_.base_length * (1.0 - 1e-12));
    if (v == "l") iv.lo = std::max(iv.lo, spec_.com_offset * (1.0 + 1e-12));
    if (v == "m_r") iv.lo = std::max(iv.lo, spec_.arm_mass);
    return iv;
  }

  double metric_at(const DesignConstraint& c, const std::string& v, double x) const {
    RobotSpec s = spec_;
    set_field(s, v, x);
    return evaluate_metric(s, c.metric, c.location);
  }

  bool satisfied_at(const DesignConstraint& c, const std::string& v, double x) const {
    return margin_of(c, metric_at(c, v, x)) >= 0.0;
  }

  // Threshold where constraint `c` switches between violated and satisfied
  // along [lo, hi]; `rising` means satisfied at hi.
  double threshold(const DesignConstraint& c, const std::string& v, Shape shape, double lo,
                   double hi, bool rising) const {
    if (shape.affine) {
      const double f0 = metric_at(c, v, lo);
      const double f1 = metric_at(c, v, hi);
      if (std::isfinite(f0) && std::isfinite(f1) && f1 != f0) {
        double x = lo + (c.value - f0) * (hi - lo) / (f1 - f0);
        x = std::clamp(x, lo, hi);
        // Step off rounding onto the satisfied side.
        const double toward = rising ? hi : lo;
        for (int i = 0; i < 64 && !satisfied_at(c, v, x); ++i) x = std::nextafter(x, toward);
        if (satisfied_at(c, v, x)) return x;
      }
    }
    return bisect_threshold([&](double x) { return satisfied_at(c, v, x); }, lo, hi, rising);
  }

  Interval feasible_interval(const std::string& v, std::string* binding) const {
    const Interval bounds = valid_bounds(v);
    Interval iv = bounds;
    if (bounds.empty()) {
      *binding = "validity bounds of " + v;
      return iv;
    }
    for (const auto& c : problem_.constraints) {
      const Shape shape = shape_of(c, v);
      if (shape.direction == 0) {
        if (!satisfied(c, spec_)) {
          *binding = c.label();
          return {1.0, 0.0};
        }
        continue;
      }
      const bool upper_set = (c.cmp == Comparator::kAtLeast) == (shape.direction > 0);
      const bool sat_lo = satisfied_at(c, v, bounds.lo);
      const bool sat_hi = satisfied_at(c, v, bounds.hi);
      if (upper_set) {
        if (sat_lo) continue;
        if (!sat_hi) {
          *binding = c.label();
          return {1.0, 0.0};
        }
        iv.lo = std::max(iv.lo, threshold(c, v, shape, bounds.lo, bounds.hi, true));
      } else {
        if (sat_hi) continue;
        if (!sat_lo) {
          *binding = c.label();
          return {1.0, 0.0};
        }
        iv.hi = std::min(iv.hi, threshold(c, v, shape, bounds.lo, bounds.hi, false));
      }
      if (iv.empty()) {
        *binding = c.label();
        return iv;
      }
    }
    return iv;
  }

  double choose(const std::string& v, const Interval& iv, double current) const {
    const auto& obj = problem_.objective;
    if (obj.target == v) return obj.sense == Sense::kMinimize ? iv.lo : iv.hi;
    if (obj.target == "payload") {
      const int dir = shape_of("payload", true, v).direction;
      if (dir > 0) return iv.hi;
      if (dir < 0) return iv.lo;
      return tie_break(v, iv, current);
    }
    // The objective is the other free variable: push `v` the way that loosens
    // every constraint the objective variable also appears in.
    int relax = 0;
    for (const auto& c : problem_.constraints) {
      if (shape_of(c, obj.target).direction == 0) continue;
      const int dir = shape_of(c, v).direction;
      if (dir == 0) continue;
      const int want = c.cmp == Comparator::kAtLeast ? dir : -dir;
      if (relax != 0 && want != relax) {
        throw Error(ErrorCode::kUnsupported,
                    "non-monotone combination: constraints pull '" + v + "' in opposite directions");
      }
      relax = want;
    }
    if (relax > 0) return iv.hi;
    if (relax < 0) return iv.lo;
    return tie_break(v, iv, current);
  }

  // Equally good choices prefer the narrowest, then lightest, robot.
  static double tie_break(const std::string& v, const Interval& iv, double current) {
    if (v == "w" || v == "m_r") return iv.lo;
    return std::clamp(current, iv.lo, iv.hi);
  }

  DesignSolution finish(int iterations, const std::string& binding) const {
    DesignSolution sol;
    sol.spec = spec_;
    sol.objective = problem_.objective;
    sol.free = vars_;
    sol.iterations = iterations;

    double worst = std::numeric_limits<double>::infinity();
    std::string worst_label = binding;
    for (const auto& c : problem_.constraints) {
      ConstraintResult r{c, evaluate_metric(spec_, c.metric, c.location), 0.0};
      r.margin = margin_of(c, r.achieved);
      const double scaled = r.margin / std::max(1.0, std::abs(c.value));
      if (scaled < worst) {
        worst = scaled;
        if (scaled < 0.0) worst_label = c.label();
      }
      sol.constraints.push_back(std::move(r));
    }
    if (worst < 0.0) {
      throw Error(ErrorCode::kInfeasible,
                  "design problem infeasible; binding constraint: " + worst_label);
    }
    const auto report = validate_spec(spec_);
    if (!report.valid()) {
      throw Error(ErrorCode::kInfeasible, "no valid spec satisfies the constraints: " + report.to_string());
    }
    sol.objective_value = problem_.objective.target == "payload"
                              ? tri_max_payload(spec_)
                              : get_field(spec_, problem_.objective.target);
    return sol;
  }

  const DesignProblem& problem_;
  RobotSpec spec_;
  std::vector<std::string> vars_;
  std::map<std::string, Interval> search_;
};

}  // namespace

DesignSolution solve_design(const DesignProblem& problem) { return Solver(problem).run(); }

std::string DesignSolution::to_csv() const {
  CsvWriter csv;
  csv.row({"item", "value", "required", "margin"});
  csv.row({std::string(objective.sense == Sense::kMinimize ? "minimize " : "maximize ") +
               objective.target,
           format_number(objective_value), "", ""});
  for (auto key : design_variables()) {
    csv.row({std::string(key), format_number(get_field(spec, key)), "", ""});
  }
  for (const auto& r : constraints) {
    const auto cell = [](double v) {
      return std::isinf(v) ? std::string("unbounded") : format_number(v);
    };
    csv.row({r.constraint.label(), cell(r.achieved), format_number(r.constraint.value),
             cell(r.margin)});
  }
  return csv.str();
}

}  // namespace stretchstab
