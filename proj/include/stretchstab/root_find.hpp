// SPDX-FileCopyrightText: (c) 2026 The stretchstab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

namespace stretchstab {

// Transition point of a monotone predicate on [lo, hi].
//
// `pred` must be false on [lo, x*) and true on [x*, hi] (pass `rising =
// false` for the mirrored shape, true then false). Returns the end of the
// final bracket on the true side, so pred(result) always holds. The bracket
// is halved until its width falls below rel_tol * max(|lo|, |hi|, 1e-300).
//
// Preconditions are checked: pred must differ at the two ends, otherwise
// Error(kInvalidArgument) is thrown.
double bisect_threshold(const std::function<bool(double)>& pred, double lo, double hi,
                        bool rising = true, double rel_tol = 1e-13, int max_iter = 400);

}  // namespace stretchstab
