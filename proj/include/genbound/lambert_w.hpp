// Copyright 2026 The genbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>

#include "genbound/core.hpp"

namespace genbound {

// Solves w + ln(-w) = -t for the branch w <= -1, i.e. w = W_{-1}(-e^{-t}),
// for t >= 1. Working in t avoids the cancellation of x near 0 and -1/e.
inline double lambert_w_m1_log(double t) {
  require(t >= 1.0, "lambert_w_m1_log: t must be >= 1");
  const double u = t - 1.0;
  if (u == 0.0) return -1.0;
  // Chatzigeorgiou: -1 - sqrt(2u) - u < W_{-1}(-e^{-u-1}) < -1 - sqrt(2u) - 2u/3.
  const double lo = -1.0 - std::sqrt(2.0 * u) - u;
  const double hi = -1.0 - std::sqrt(2.0 * u) - 2.0 * u / 3.0;
  double w = 0.5 * (lo + hi);
  // Newton on g(w) = w + ln(-w) + t, g'(w) = 1 + 1/w = (w + 1)/w.
  for (int it = 0; it < 100; ++it) {
    const double g = w + std::log(-w) + t;
    const double step = g * w / (w + 1.0);
    double next = w - step;
    if (!(next < -1.0)) next = 0.5 * (w - 1.0);
    if (next < lo) next = 0.5 * (w + lo);
    if (next > hi) next = 0.5 * (w + hi);
    if (std::abs(next - w) <= 1e-14 * std::abs(w)) {
      w = next;
      break;
    }
    w = next;
  }
  return w;
}

// W_{-1}(x) for x in [-1/e, 0).
inline double lambert_w_m1(double x) {
  require(x < 0.0 && x >= -std::exp(-1.0) * (1.0 + 1e-15), "lambert_w_m1: x must lie in [-1/e, 0)");
  const double t = -std::log(-x);
  if (t <= 1.0) return -1.0;
  return lambert_w_m1_log(t);
}

}  // namespace genbound
