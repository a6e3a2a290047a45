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
#include <string>
#include <vector>

#include "genbound/core.hpp"

namespace genbound {

inline constexpr double kProbSumTol = 1e-9;

class DiscreteDist {
 public:
  explicit DiscreteDist(std::vector<double> probs) : probs_(std::move(probs)) {
    require(!probs_.empty(), "DiscreteDist: empty probability vector");
    double s = 0.0;
    for (double p : probs_) {
      require(std::isfinite(p) && p >= 0.0, "DiscreteDist: entries must be finite and >= 0");
      s += p;
    }
    // Never renormalize: a sum outside tolerance is a caller bug.
    require(std::abs(s - 1.0) <= kProbSumTol, "DiscreteDist: probabilities must sum to 1");
  }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

struct GaussianDiag {
  std::vector<double> mean;
  std::vector<double> variance;  // one entry per coordinate

  GaussianDiag(std::vector<double> mu, std::vector<double> var)
      : mean(std::move(mu)), variance(std::move(var)) {
    require(!mean.empty(), "GaussianDiag: dimension must be >= 1");
    require(variance.size() == mean.size(), "GaussianDiag: variance dimension mismatch");
    for (double v : variance) require(v > 0.0 && std::isfinite(v), "GaussianDiag: variance must be > 0");
  }

  static GaussianDiag isotropic(std::vector<double> mu, double var) {
    const std::size_t d = mu.size();
    return GaussianDiag(std::move(mu), std::vector<double>(d, var));
  }

  std::size_t dim() const { return mean.size(); }
};

struct MixtureSpec {
  std::vector<DiscreteDist> components;
  std::vector<double> weights;

  MixtureSpec(std::vector<DiscreteDist> comps, std::vector<double> w)
      : components(std::move(comps)), weights(std::move(w)) {
    require(!components.empty(), "MixtureSpec: no components");
    require(components.size() == weights.size(), "MixtureSpec: component/weight count mismatch");
    double s = 0.0;
    for (double x : weights) {
      require(std::isfinite(x) && x > 0.0, "MixtureSpec: zero or negative weight");
      s += x;
    }
    require(std::abs(s - 1.0) <= kProbSumTol, "MixtureSpec: weights must sum to 1");
    for (const auto& c : components)
      require(c.size() == components.front().size(), "MixtureSpec: alphabet mismatch");
  }

  DiscreteDist mixed() const {
    std::vector<double> q(components.front().size(), 0.0);
    for (std::size_t b = 0; b < components.size(); ++b)
      for (std::size_t i = 0; i < q.size(); ++i) q[i] += weights[b] * components[b][i];
    double s = 0.0;
    for (double x : q) s += x;
    for (double& x : q) x /= s;  // removes float drift only; inputs already sum to 1
    return DiscreteDist(std::move(q));
  }
};

namespace detail {
inline void same_alphabet(const DiscreteDist& p, const DiscreteDist& q) {
  require(p.size() == q.size(), "alphabet size mismatch");
}
}  // namespace detail

inline double kl_discrete(const DiscreteDist& p, const DiscreteDist& q) {
  detail::same_alphabet(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    s += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(s, 0.0);
}

inline double kl_bernoulli(double r_hat, double r) {
  require(r_hat >= 0.0 && r_hat <= 1.0 && r >= 0.0 && r <= 1.0, "kl_bernoulli: inputs must lie in [0,1]");
  double s = 0.0;
  if (r_hat > 0.0) {
    if (r == 0.0) return kInf;
    s += r_hat * std::log(r_hat / r);
  }
  if (r_hat < 1.0) {
    if (r == 1.0) return kInf;
    s += (1.0 - r_hat) * (std::log1p(-r_hat) - std::log1p(-r));
  }
  return std::max(s, 0.0);
}

inline double tv_discrete(const DiscreteDist& p, const DiscreteDist& q) {
  detail::same_alphabet(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return std::min(0.5 * s, 1.0);
}

inline double chi2_discrete(const DiscreteDist& p, const DiscreteDist& q) {
  detail::same_alphabet(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] == 0.0) {
      if (p[i] > 0.0) return kInf;
      continue;
    }
    const double d = p[i] - q[i];
    s += d * d / q[i];
  }
  return s;
}

inline double renyi_inf_discrete(const DiscreteDist& p, const DiscreteDist& q) {
  detail::same_alphabet(p, q);
  double m = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    m = std::max(m, p[i] / q[i]);
  }
  return std::max(std::log(m), 0.0);
}

inline double wasserstein2_gaussian(const GaussianDiag& a, const GaussianDiag& b) {
  require(a.dim() == b.dim(), "wasserstein2_gaussian: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double dm = a.mean[i] - b.mean[i];
    const double ds = std::sqrt(a.variance[i]) - std::sqrt(b.variance[i]);
    s += dm * dm + ds * ds;
  }
  return std::sqrt(s);
}

struct MixtureKl {
  double exact = 0.0;
  double log_sum_exp_bound = 0.0;
  double min_bound = 0.0;
};

// exact <= log_sum_exp_bound <= min_bound for any finite mixture.
inline MixtureKl mixture_kl_bounds(const DiscreteDist& p, const MixtureSpec& mix) {
  require(p.size() == mix.components.front().size(), "mixture_kl_bounds: alphabet mismatch");
  MixtureKl out;
  out.exact = kl_discrete(p, mix.mixed());
  std::vector<double> expo;
  out.min_bound = kInf;
  for (std::size_t b = 0; b < mix.components.size(); ++b) {
    const double kl = kl_discrete(p, mix.components[b]);
    const double lw = std::log(mix.weights[b]);
    out.min_bound = std::min(out.min_bound, kl - lw);
    if (!is_inf(kl)) expo.push_back(lw - kl);
  }
  if (expo.empty()) {
    out.log_sum_exp_bound = kInf;
    return out;
  }
  const double mx = *std::max_element(expo.begin(), expo.end());
  double s = 0.0;
  for (double e : expo) s += std::exp(e - mx);
  out.log_sum_exp_bound = -(mx + std::log(s));
  return out;
}

// min of Pinsker and Bretagnolle-Huber; capped at 1.
inline double tv_from_kl(double kl) {
  require(kl >= 0.0, "tv_from_kl: kl must be >= 0");
  if (is_inf(kl)) return 1.0;
  const double pinsker = std::sqrt(0.5 * kl);
  const double bh = std::sqrt(-std::expm1(-kl));
  return std::min({pinsker, bh, 1.0});
}

}  // namespace genbound
