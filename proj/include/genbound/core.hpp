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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace genbound {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kE = 2.71828182845904523536;

// Raised for any violated precondition; the CLI maps it to exit status 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InputError(what);
}

inline bool is_inf(double x) { return std::isinf(x) && x > 0; }

struct BoundResult {
  double value = 0.0;
  std::map<std::string, double> params;
  std::string regime;
  bool vacuous = false;
};

enum class XiMode { kConservative, kTight };

// Scalar inputs shared by the high-probability bounds. emp_risk lives in
// [0, range_b]; bounded-loss bounds rescale by range_b internally.
struct BoundContext {
  long long n = 1;
  double beta = 0.05;
  double dependency = 0.0;
  double emp_risk = 0.0;
  double range_b = 1.0;
  XiMode xi = XiMode::kConservative;

  void validate() const {
    require(n >= 1, "n must be >= 1");
    require(beta > 0.0 && beta < 1.0, "beta must lie in (0,1)");
    require(dependency >= 0.0, "dependency must be >= 0");
    require(range_b > 0.0 && std::isfinite(range_b), "range_b must be positive and finite");
    require(emp_risk >= 0.0 && emp_risk <= range_b, "emp_risk must lie in [0, range_b]");
  }
};

// Pairwise summation; the result depends only on the input order.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

struct Minimum {
  double x = 0.0;
  double fx = kInf;
};

// Golden-section search for a unimodal f on [a, b] until the bracket is
// narrower than tol. Returns the best point evaluated.
inline Minimum golden_section_min(const std::function<double(double)>& f, double a, double b,
                                  double tol = 1e-10, int max_iter = 300) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  Minimum best = f1 <= f2 ? Minimum{x1, f1} : Minimum{x2, f2};
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
      if (f1 < best.fx) best = {x1, f1};
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
      if (f2 < best.fx) best = {x2, f2};
    }
  }
  return best;
}

// Evaluates f on an evenly spaced grid over [lo, hi] (in the caller's
// coordinate), then refines around the best grid point by golden section.
inline Minimum grid_golden_min(const std::function<double(double)>& f, double lo, double hi,
                               int points, double tol = 1e-10) {
  require(points >= 3 && hi > lo, "grid_golden_min: bad grid");
  const double step = (hi - lo) / (points - 1);
  int best_i = 0;
  double best_f = kInf;
  for (int i = 0; i < points; ++i) {
    const double fx = f(lo + step * i);
    if (fx < best_f) {
      best_f = fx;
      best_i = i;
    }
  }
  const double a = lo + step * std::max(best_i - 1, 0);
  const double b = lo + step * std::min(best_i + 1, points - 1);
  Minimum refined = golden_section_min(f, a, b, tol);
  if (refined.fx <= best_f) return refined;
  return {lo + step * best_i, best_f};
}

// points values spaced evenly (linear) or geometrically (log) on [lo, hi].
inline std::vector<double> spaced(double lo, double hi, int points, bool log_scale) {
  require(points >= 2, "need at least two points");
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    out[i] = log_scale ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                       : lo + t * (hi - lo);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace genbound
