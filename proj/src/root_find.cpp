// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "stretchstab/root_find.hpp"

#include <algorithm>
#include <cmath>

#include "stretchstab/error.hpp"

namespace stretchstab {

double bisect_threshold(const std::function<bool(double)>& pred, double lo, double hi, bool rising,
                        double rel_tol, int max_iter) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(ErrorCode::kInvalidArgument, "bisection needs a finite bracket with lo < hi");
  }
  // Normalise to the rising shape: `t` is the true side, `f` the false side.
  double f = rising ? lo : hi;
  double t = rising ? hi : lo;
  if (pred(f) || !pred(t)) {
    throw Error(ErrorCode::kInvalidArgument, "bisection bracket does not straddle the threshold");
  }
  const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
  for (int i = 0; i < max_iter && std::abs(t - f) > rel_tol * scale; ++i) {
    const double mid = 0.5 * (f + t);
    if (mid == f || mid == t) break;
    (pred(mid) ? t : f) = mid;
  }
  return t;
}

}  // namespace stretchstab
