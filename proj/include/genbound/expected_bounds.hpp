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
#include <numeric>
#include <string>
#include <vector>

#include "genbound/cgf.hpp"
#include "genbound/core.hpp"
#include "genbound/measures.hpp"
#include "genbound/pb_bounded.hpp"
#include "genbound/pb_unbounded.hpp"

namespace genbound {

struct DependencyVector {
  std::vector<double> values;
  std::string semantics;

  explicit DependencyVector(std::vector<double> v, std::string tag = "mi") : values(std::move(v)), semantics(std::move(tag)) {
    for (double x : values) require(x >= 0.0, "DependencyVector: entries must be >= 0");
  }

  double mean() const {
    require(!values.empty(), "DependencyVector: empty");
    return pairwise_sum(values) / static_cast<double>(values.size());
  }
};

struct LipschitzGeom {
  double L = 1.0;
  double B = 1.0;

  void validate() const { require(L > 0.0 && B > 0.0, "LipschitzGeom: L and B must be > 0"); }
};

namespace detail {
inline void check_mi(double mi, long long n) {
  require(mi >= 0.0, "dependency must be >= 0");
  require(n >= 1, "n must be >= 1");
}
}  // namespace detail

inline double mi_gap_bound(double mi, long long n, const CgfEnvelope& env) {
  detail::check_mi(mi, n);
  return psi_star_inverse(env, mi / static_cast<double>(n));
}

inline double expected_fast_rate(double mi, long long n, double emp, double gamma, double c) {
  detail::check_mi(mi, n);
  require(emp >= 0.0 && emp <= 1.0, "emp must lie in [0,1]");
  const Kappas k = kappas(gamma, c);
  return k.k1 * emp + k.k2 * mi / static_cast<double>(n) + k.k3;
}

inline double expected_kl_inverse(double mi, long long n, double emp) {
  detail::check_mi(mi, n);
  require(emp >= 0.0 && emp <= 1.0, "emp must lie in [0,1]");
  return kl_inverse_upper(emp, mi / static_cast<double>(n));
}

// inf over (gamma, c) of expected_fast_rate; equals expected_kl_inverse.
inline BoundResult expected_fast_rate_optimal(double mi, long long n, double emp) {
  detail::check_mi(mi, n);
  require(emp >= 0.0 && emp <= 1.0, "emp must lie in [0,1]");
  const double u = mi / static_cast<double>(n);
  BoundResult r;
  if (u == 0.0) {
    r.value = emp;
    r.regime = "zero_dependency";
    return r;
  }
  if (emp == 0.0) {
    r.value = -std::expm1(-u);
    r.params["gamma"] = 1.0;
    r.params["c"] = std::exp(-u);
    r.regime = "interpolating_limit";
    return r;
  }
  Minimum m = grid_golden_min([&](double lc) { return detail::fast_rate_at_c(emp, u, std::exp(lc)); }, -40.0, 0.0, 200, 1e-10);
  double gamma = 0.0;
  r.value = detail::fast_rate_at_c(emp, u, std::exp(m.x), &gamma);
  r.params["gamma"] = gamma;
  r.params["c"] = std::exp(m.x);
  r.regime = "optimal_gamma_c";
  return r;
}

inline double expected_mixed_rate(double mi, long long n, double emp) {
  detail::check_mi(mi, n);
  require(emp >= 0.0, "emp must be >= 0");
  const double u = mi / static_cast<double>(n);
  return emp + u + std::sqrt(2.0 * emp * u);
}

inline BoundResult expected_moment(double mi, long long n, const MomentAssumption& mom, const TruncatedEmp& trunc) {
  detail::check_mi(mi, n);
  return moment_tradeoff(mi / static_cast<double>(n), mom, trunc);
}

inline BoundResult expected_variance(double mi, long long n, double emp, double sigma2) {
  detail::check_mi(mi, n);
  require(sigma2 > 0.0, "sigma^2 must be > 0");
  const double y = mi / static_cast<double>(n);
  const GammaC best = optimize_gamma_c([&](double g, double c) { return detail::variance_form(emp, sigma2, y, g, c); });
  BoundResult r;
  r.value = best.value;
  r.params["gamma"] = best.gamma;
  r.params["c"] = best.c;
  r.regime = std::isfinite(best.value) ? "optimal_gamma_c" : "prefactor_zero";
  r.vacuous = !std::isfinite(best.value);
  return r;
}

inline double cmi_gap_bound(double cmi, long long n, double range) {
  detail::check_mi(cmi, n);
  require(range > 0.0, "range must be > 0");
  return range * std::sqrt(2.0 * cmi / static_cast<double>(n));
}

// CMI never exceeds n ln 2 (one bit per index); larger inputs are suspect.
inline bool cmi_exceeds_entropy(double cmi, long long n) { return cmi > static_cast<double>(n) * std::log(2.0); }

// Diagnostic: the CMI bound is the tighter one when 3 CMI <= MI.
inline bool cmi_beats_mi(double cmi, double mi) { return 3.0 * cmi <= mi; }

inline double ecmi_gap_bound(double ecmi, long long n, const LipschitzGeom& geom) {
  detail::check_mi(ecmi, n);
  geom.validate();
  return geom.L * geom.B * std::sqrt(8.0 * ecmi / static_cast<double>(n));
}

enum class AggregateMode { kSqrtEach, kMeanThenInvert };

inline double aggregate_single_letter(const DependencyVector& dep, long long n, AggregateMode mode, const CgfEnvelope& env) {
  require(static_cast<long long>(dep.values.size()) == n, "aggregate_single_letter: length must equal n");
  if (mode == AggregateMode::kMeanThenInvert) return psi_star_inverse(env, dep.mean());
  std::vector<double> terms;
  terms.reserve(dep.values.size());
  for (double x : dep.values) terms.push_back(psi_star_inverse(env, x));
  return pairwise_sum(terms) / static_cast<double>(n);
}

enum class WassersteinVariant { kFull, kSingleLetter, kRandomSubset, kRsSetting };

inline double wasserstein_gap_bound(const DependencyVector& w_terms, const LipschitzGeom& geom, WassersteinVariant variant) {
  geom.validate();
  if (variant == WassersteinVariant::kFull || variant == WassersteinVariant::kRsSetting)
    require(w_terms.values.size() == 1, "wasserstein_gap_bound: full and rs_setting take one scalar");
  const double factor = variant == WassersteinVariant::kRsSetting ? 2.0 : 1.0;
  return factor * geom.L * w_terms.mean();
}

enum class TvInput { kKl, kTv };

inline double tv_gap_bound(const DependencyVector& terms, const LipschitzGeom& geom, TvInput kind) {
  geom.validate();
  std::vector<double> tv;
  tv.reserve(terms.values.size());
  for (double x : terms.values) tv.push_back(kind == TvInput::kKl ? tv_from_kl(x) : std::min(x, 1.0));
  require(!tv.empty(), "tv_gap_bound: empty input");
  return geom.L * geom.B * pairwise_sum(tv) / static_cast<double>(tv.size());
}

struct SgldStep {
  double eta = 0.0;
  double sigma2 = 1.0;
  double incoherence2 = 0.0;  // expected squared (possibly weighted) incoherence
};

// Mutual-information bound (d/2) sum ln(1 + eta^2 L^2 / (d sigma^2)).
inline double sgld_pensia(const std::vector<SgldStep>& steps, long long d, double L) {
  require(d >= 1 && L >= 0.0, "sgld_pensia: d >= 1 and L >= 0 required");
  std::vector<double> terms;
  terms.reserve(steps.size());
  const double dd = static_cast<double>(d);
  for (const auto& s : steps) {
    require(s.sigma2 > 0.0, "sgld_pensia: sigma_t^2 must be > 0");
    terms.push_back(0.5 * dd * std::log1p(s.eta * s.eta * L * L / (dd * s.sigma2)));
  }
  return pairwise_sum(terms);
}

namespace detail {
inline double weighted_noise_sum(const std::vector<SgldStep>& steps) {
  std::vector<double> terms;
  terms.reserve(steps.size());
  for (const auto& s : steps) {
    require(s.sigma2 > 0.0, "sgld: sigma_t^2 must be > 0");
    require(s.incoherence2 >= 0.0, "sgld: incoherence must be >= 0");
    terms.push_back(s.eta * s.eta / s.sigma2 * s.incoherence2);
  }
  return pairwise_sum(terms);
}
}  // namespace detail

inline double sgld_incoherence(const std::vector<SgldStep>& steps, long long batch, double range) {
  require(batch >= 1 && range > 0.0, "sgld_incoherence: batch >= 1 and range > 0 required");
  if (steps.empty()) return 0.0;
  return range / (std::sqrt(2.0) * static_cast<double>(batch)) * std::sqrt(detail::weighted_noise_sum(steps));
}

// Two-sample variant; incoherence2 carries E[(U - pi)^2 |Gamma|^2].
inline double sgld_two_sample(const std::vector<SgldStep>& steps, long long batch, double range) {
  require(batch >= 1 && range > 0.0, "sgld_two_sample: batch >= 1 and range > 0 required");
  if (steps.empty()) return 0.0;
  return std::sqrt(2.0) * range / static_cast<double>(batch) * std::sqrt(detail::weighted_noise_sum(steps));
}

}  // namespace genbound
