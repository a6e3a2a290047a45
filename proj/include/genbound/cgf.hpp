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
#include <memory>
#include <string>
#include <vector>

// Boost 1.74's pchip calls isnan unqualified.
namespace boost::math::interpolators {
using std::isnan;
}
#include <boost/math/interpolators/pchip.hpp>

#include "genbound/core.hpp"
#include "genbound/measures.hpp"

namespace genbound {

enum class CgfKind { kSubGaussian, kSubGamma, kSubExponential, kCustom };

// A convex dominating function psi of a centered CGF on [0, b).
class CgfEnvelope {
 public:
  static CgfEnvelope sub_gaussian(double sigma2) {
    require(sigma2 > 0.0 && std::isfinite(sigma2), "SubGaussian: sigma^2 must be > 0");
    return CgfEnvelope(CgfKind::kSubGaussian, sigma2, 0.0, kInf);
  }
  static CgfEnvelope sub_gamma(double sigma2, double c) {
    require(sigma2 > 0.0 && std::isfinite(sigma2), "SubGamma: sigma^2 must be > 0");
    require(c > 0.0 && std::isfinite(c), "SubGamma: c must be > 0");
    return CgfEnvelope(CgfKind::kSubGamma, sigma2, c, 1.0 / c);
  }
  static CgfEnvelope sub_exponential(double sigma2, double c) {
    require(sigma2 > 0.0 && std::isfinite(sigma2), "SubExponential: sigma^2 must be > 0");
    require(c > 0.0 && std::isfinite(c), "SubExponential: c must be > 0");
    return CgfEnvelope(CgfKind::kSubExponential, sigma2, c, 1.0 / c);
  }
  // Tabulated psi on [0, lambdas.back()], interpolated by a monotone cubic.
  // The table must start at (0, 0) and hold at least four points.
  static CgfEnvelope custom(std::vector<double> lambdas, std::vector<double> psis) {
    require(lambdas.size() == psis.size(), "Custom CGF: table size mismatch");
    require(lambdas.size() >= 4, "Custom CGF: need at least 4 table points");
    require(lambdas.front() == 0.0 && psis.front() == 0.0, "Custom CGF: table must start at (0,0)");
    for (std::size_t i = 1; i < lambdas.size(); ++i) {
      require(lambdas[i] > lambdas[i - 1], "Custom CGF: lambdas must increase");
      require(std::isfinite(psis[i]) && psis[i] >= 0.0, "Custom CGF: psi must be finite and >= 0");
    }
    double prev_slope = -kInf;
    double last_slope = 0.0;
    for (std::size_t i = 1; i < lambdas.size(); ++i) {
      const double slope = (psis[i] - psis[i - 1]) / (lambdas[i] - lambdas[i - 1]);
      require(slope >= prev_slope - 1e-12 * std::max(1.0, std::abs(slope)), "Custom CGF: table is not convex");
      prev_slope = slope;
      last_slope = slope;
    }
    // psi'(0) from the quadratic through the first three table points.
    const double l1 = lambdas[1], l2 = lambdas[2];
    const double d0 = psis[1] * l2 / (l1 * (l2 - l1)) - psis[2] * l1 / (l2 * (l2 - l1));
    require(std::abs(d0) <= 1e-3 * std::max(last_slope, 1e-12) + 1e-12, "Custom CGF: psi'(0) must be 0");
    CgfEnvelope env(CgfKind::kCustom, 0.0, 0.0, lambdas.back());
    auto x = lambdas;
    auto y = psis;
    env.interp_ = std::make_shared<const boost::math::interpolators::pchip<std::vector<double>>>(
        std::move(x), std::move(y), 0.0);
    return env;
  }

  CgfKind kind() const { return kind_; }
  double sigma2() const { return sigma2_; }
  double c() const { return c_; }
  double domain_limit() const { return b_; }

  std::string name() const {
    switch (kind_) {
      case CgfKind::kSubGaussian: return "sub_gaussian";
      case CgfKind::kSubGamma: return "sub_gamma";
      case CgfKind::kSubExponential: return "sub_exponential";
      case CgfKind::kCustom: return "custom";
    }
    return "unknown";
  }

  // psi at lambda without domain checks; lambda == b gives the left limit.
  double eval_unchecked(double lambda) const {
    switch (kind_) {
      case CgfKind::kSubGaussian:
      case CgfKind::kSubExponential:
        return 0.5 * lambda * lambda * sigma2_;
      case CgfKind::kSubGamma: {
        const double denom = 1.0 - c_ * lambda;
        return denom <= 0.0 ? kInf : lambda * lambda * sigma2_ / (2.0 * denom);
      }
      case CgfKind::kCustom:
        return std::max((*interp_)(lambda), 0.0);
    }
    return kInf;
  }

 private:
  CgfEnvelope(CgfKind k, double s2, double c, double b) : kind_(k), sigma2_(s2), c_(c), b_(b) {}

  CgfKind kind_;
  double sigma2_;
  double c_;
  double b_;
  std::shared_ptr<const boost::math::interpolators::pchip<std::vector<double>>> interp_;
};

inline double psi(const CgfEnvelope& env, double lambda) {
  require(lambda >= 0.0 && lambda < env.domain_limit(), "psi: lambda outside [0, b)");
  return env.eval_unchecked(lambda);
}

// inf_{lambda in (0,b)} (z + psi(lambda)) / lambda by log-grid search and
// golden-section refinement, including the limit lambda -> b.
inline double psi_star_inverse_numeric(const CgfEnvelope& env, double z) {
  require(z >= 0.0, "psi_star_inverse: z must be >= 0");
  if (z == 0.0) return 0.0;
  if (is_inf(z)) return kInf;
  const double b = env.domain_limit();
  const bool bounded = std::isfinite(b);
  const double lo = bounded ? b * 1e-6 : 1e-9;
  const double hi = bounded ? b * (1.0 - 1e-6) : 1e9;
  const int points = bounded ? 400 : 600;
  auto objective = [&](double log_lambda) {
    const double lambda = std::exp(log_lambda);
    return (z + env.eval_unchecked(lambda)) / lambda;
  };
  Minimum m = grid_golden_min(objective, std::log(lo), std::log(hi), points, 1e-10);
  double best = m.fx;
  if (bounded) {
    const double edge = (z + env.eval_unchecked(b)) / b;
    if (edge < best) best = edge;
  }
  return best;
}

// Linearized sub-exponential inverse, (c+1) z past the knee. It dominates
// psi_star_inverse only when c <= 1.
inline double subexponential_simplified_inverse(double sigma2, double c, double z) {
  require(z >= 0.0, "psi_star_inverse: z must be >= 0");
  return z <= sigma2 / (2.0 * c * c) ? std::sqrt(2.0 * sigma2 * z) : (c + 1.0) * z;
}

inline double psi_star_inverse(const CgfEnvelope& env, double z) {
  require(z >= 0.0, "psi_star_inverse: z must be >= 0");
  if (z == 0.0) return 0.0;
  if (is_inf(z)) return kInf;
  const double s2 = env.sigma2();
  const double c = env.c();
  switch (env.kind()) {
    case CgfKind::kSubGaussian:
      return std::sqrt(2.0 * s2 * z);
    case CgfKind::kSubGamma:
      return std::sqrt(2.0 * s2 * z) + c * z;
    case CgfKind::kSubExponential:
      // Past the knee the infimum sits at the domain edge lambda = 1/c.
      return z <= s2 / (2.0 * c * c) ? std::sqrt(2.0 * s2 * z) : c * z + s2 / (2.0 * c);
    case CgfKind::kCustom:
      return psi_star_inverse_numeric(env, z);
  }
  return kInf;
}

inline double bernoulli_cgf_conjugate(double mean_r, double t) {
  require(mean_r >= 0.0 && mean_r <= 1.0, "bernoulli_cgf_conjugate: mean must lie in [0,1]");
  require(t >= 0.0 && t <= mean_r, "bernoulli_cgf_conjugate: t must lie in [0, mean]");
  return kl_bernoulli(std::max(mean_r - t, 0.0), mean_r);
}

}  // namespace genbound
