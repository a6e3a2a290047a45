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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "genbound/cgf.hpp"
#include "genbound/core.hpp"
#include "genbound/pb_bounded.hpp"
#include "genbound/pb_unbounded.hpp"

namespace genbound {

using BigInt = boost::multiprecision::cpp_int;

enum class PrivacyKind { kPureDp, kGdp, kMaximalLeakage };

struct PrivacyParams {
  PrivacyKind kind = PrivacyKind::kPureDp;
  double value = 1.0;

  static PrivacyParams pure_dp(double eps) { return make(PrivacyKind::kPureDp, eps); }
  static PrivacyParams gdp(double mu) { return make(PrivacyKind::kGdp, mu); }
  static PrivacyParams maximal_leakage(double eps) { return make(PrivacyKind::kMaximalLeakage, eps); }

 private:
  static PrivacyParams make(PrivacyKind k, double v) {
    require(v > 0.0 && std::isfinite(v), "privacy parameter must be positive and finite");
    return {k, v};
  }
};

struct AlphabetSpec {
  long long Z = 2;

  explicit AlphabetSpec(long long z) : Z(z) { require(z >= 2, "alphabet size Z must be >= 2"); }
};

// Which bound a privacy or leakage parameter is plugged into.
struct PrivacyTarget {
  enum class Kind { kSmallKl, kFastRate, kChernoff, kMoment };
  Kind kind = Kind::kSmallKl;
  std::optional<CgfEnvelope> env;
  MomentAssumption mom;
  TruncatedEmp trunc;

  static PrivacyTarget small_kl() { return {}; }
  static PrivacyTarget fast_rate() { return {Kind::kFastRate, std::nullopt, {}, {}}; }
  static PrivacyTarget chernoff(const CgfEnvelope& e) { return {Kind::kChernoff, e, {}, {}}; }
  static PrivacyTarget moment(const MomentAssumption& m, TruncatedEmp t) { return {Kind::kMoment, std::nullopt, m, std::move(t)}; }
};

namespace detail {

inline BoundResult delegate_privacy(const BoundContext& ctx, const PrivacyTarget& target) {
  ctx.validate();
  const double nd = static_cast<double>(ctx.n);
  switch (target.kind) {
    case PrivacyTarget::Kind::kSmallKl:
      return seeger_langford(ctx);
    case PrivacyTarget::Kind::kFastRate:
      return fast_rate_optimal(ctx);
    case PrivacyTarget::Kind::kChernoff: {
      require(target.env.has_value(), "chernoff target needs a CGF envelope");
      const double z = (ctx.dependency + std::log(1.0 / ctx.beta)) / nd;
      BoundResult r;
      r.value = psi_star_inverse(*target.env, z);
      r.params["budget"] = z;
      r.regime = "chernoff";
      r.vacuous = !std::isfinite(r.value);
      return r;
    }
    case PrivacyTarget::Kind::kMoment: {
      const double y = (ctx.dependency + std::log(xi_factor(ctx.n, ctx.xi) / ctx.beta)) / nd;
      return moment_tradeoff(y, target.mom, target.trunc, TStarRule::kLeakage);
    }
  }
  return {};
}

}  // namespace detail

// ctx.dependency is ignored; the leakage eps takes its place.
inline BoundResult maximal_leakage_bound(const BoundContext& ctx, double leakage, const PrivacyTarget& target) {
  require(leakage >= 0.0 && std::isfinite(leakage), "maximal leakage must be >= 0");
  BoundContext c = ctx;
  c.dependency = leakage;
  return detail::delegate_privacy(c, target);
}

// eps-DP implies a pointwise density ratio of at most n eps, which enters
// every budget unnormalized; the resulting bounds do not vanish in n.
inline BoundResult dp_naive_bounds(double eps, const BoundContext& ctx, const PrivacyTarget& target) {
  require(eps > 0.0 && std::isfinite(eps), "eps must be > 0");
  BoundContext c = ctx;
  c.dependency = eps * static_cast<double>(ctx.n);
  BoundResult r = detail::delegate_privacy(c, target);
  r.params["eps"] = eps;
  return r;
}

struct GroupKl {
  double value = 0.0;
  double quadratic = kInf;  // pure DP only
  double linear = kInf;     // pure DP only
};

inline GroupKl group_kl(const PrivacyParams& priv, long long k) {
  require(k >= 1, "group size k must be >= 1");
  const double kd = static_cast<double>(k);
  GroupKl out;
  switch (priv.kind) {
    case PrivacyKind::kPureDp: {
      const double ke = kd * priv.value;
      out.value = ke * std::tanh(0.5 * ke);
      out.quadratic = 0.5 * ke * ke;
      out.linear = ke;
      return out;
    }
    case PrivacyKind::kGdp:
      out.value = 0.5 * kd * kd * priv.value * priv.value;
      return out;
    case PrivacyKind::kMaximalLeakage:
      break;
  }
  throw InputError("group_kl: needs pure_dp or gdp parameters");
}

inline BigInt binomial(long long n, long long k) {
  require(n >= 0 && k >= 0 && k <= n, "binomial: need 0 <= k <= n");
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// Natural log of a non-negative big integer without overflowing a double.
inline double log_big(const BigInt& x) {
  require(x > 0, "log_big: argument must be positive");
  const std::size_t msb = boost::multiprecision::msb(x);
  const std::size_t shift = msb > 60 ? msb - 60 : 0;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

// Number of types (empirical distributions) of length-n sequences over Z symbols.
inline BigInt type_count(const AlphabetSpec& alpha, long long n) {
  require(n >= 0, "n must be >= 0");
  require(n <= 1'000'000 && alpha.Z <= 1000, "type_count: supported up to n = 1e6 and Z = 1e3");
  return binomial(n + alpha.Z - 1, alpha.Z - 1);
}

inline double simple_type_bound(const AlphabetSpec& alpha, long long n) {
  require(n >= 0, "n must be >= 0");
  return static_cast<double>(alpha.Z - 1) * std::log1p(static_cast<double>(n));
}

struct SimplexCover {
  BigInt exact;
  double upper = 0.0;  // (1/k!) (t + (k-1)/2)^k
};

// Grid hypercubes of side 1/t needed to cover the region under the unit k-simplex.
inline SimplexCover simplex_cover_count(long long k, long long t) {
  require(k >= 1 && t >= 1, "simplex_cover_count: k and t must be >= 1");
  SimplexCover out;
  out.exact = binomial(t + k - 1, k);
  const double kd = static_cast<double>(k);
  out.upper = std::exp(kd * std::log(static_cast<double>(t) + 0.5 * (kd - 1.0)) - std::lgamma(kd + 1.0));
  return out;
}

namespace detail {

// Reports the smallest bound among the branches valid at this parameter.
struct BranchSet {
  BoundResult result;

  void offer(const std::string& name, double value) {
    result.params["branch_" + name] = value;
    if (result.regime.empty() || value < result.value) {
      result.value = value;
      result.regime = name;
    }
  }
};

inline void check_privacy_pair(const PrivacyParams& priv, long long n) {
  require(priv.kind != PrivacyKind::kMaximalLeakage, "needs pure_dp or gdp parameters");
  require(n >= 1, "n must be >= 1");
}

}  // namespace detail

// Upper bound on D(P_W^{S=s} || Q) from covering the types with hypercubes.
inline BoundResult dp_cover_bound(const PrivacyParams& priv, const AlphabetSpec& alpha, long long n) {
  detail::check_privacy_pair(priv, n);
  const double zm = static_cast<double>(alpha.Z - 1);
  const double nd = static_cast<double>(n);
  const double v = priv.value;
  detail::BranchSet set;
  if (priv.kind == PrivacyKind::kPureDp) {
    if (v <= 1.0) set.offer("eps_cover", zm * std::log1p(kE * v * nd));
  } else if (v <= 1.0 / std::sqrt(zm)) {
    set.offer("gdp_cover", 0.5 * zm * std::log1p(kE * zm * v * v * nd * nd));
  }
  set.offer("simple", simple_type_bound(alpha, n));
  return set.result;
}

// Same construction restricted to the simplex where types live.
inline BoundResult dp_cover_bound_simplex(const PrivacyParams& priv, const AlphabetSpec& alpha, long long n) {
  detail::check_privacy_pair(priv, n);
  const double zm = static_cast<double>(alpha.Z - 1);
  const double nd = static_cast<double>(n);
  const double v = priv.value;
  const double h = 0.5 * std::log(2.0 * kPi * zm);
  detail::BranchSet set;
  if (priv.kind == PrivacyKind::kPureDp) {
    if (v <= 1.0 / nd) set.offer("eps_small", zm * (1.0 + v * nd) - h);
    if (v >= 1.0 / nd && v <= 1.0) set.offer("eps_mid", zm * std::log1p(2.0 * v * nd / zm) + zm * (2.0 - std::log(2.0)) - h);
  } else {
    const double root = std::sqrt(zm);
    if (v <= 1.0 / (nd * root)) set.offer("gdp_small", zm * (1.0 + 0.5 * zm * v * v * nd * nd) - h);
    if (v >= 1.0 / (nd * root) && v <= 1.0 / root)
      set.offer("gdp_mid", zm * std::log1p(2.0 * v * nd / root) + zm * (1.5 - std::log(2.0)) - h);
  }
  set.offer("general", zm * std::log1p(nd / zm) + zm - h);
  return set.result;
}

// Mutual-information bound from splitting training sets into typical and
// atypical types.
inline BoundResult typical_set_mi_bound(const PrivacyParams& priv, const AlphabetSpec& alpha, long long n) {
  detail::check_privacy_pair(priv, n);
  require(n >= 2, "typical_set_mi_bound: n must be >= 2");
  const double z = static_cast<double>(alpha.Z);
  const double nd = static_cast<double>(n);
  const double v = priv.value;
  const double snl = std::sqrt(nd * std::log(nd));
  detail::BranchSet set;
  if (priv.kind == PrivacyKind::kPureDp) {
    const double tail = 2.0 * z * v / nd;
    if (v <= 2.0) set.offer("eps_small", z * std::log1p(kE * v * snl) + tail);
    if (v >= 2.0) set.offer("eps_large", z * std::log1p(2.0 * snl) + tail);
  } else {
    const double tail = z * v * v;
    const double edge = 2.0 / std::sqrt(z);
    if (v <= edge) set.offer("gdp_small", 0.5 * z * std::log1p(kE * z * v * v * nd * std::log(nd)) + tail);
    if (v >= edge) set.offer("gdp_large", z * std::log1p(2.0 * snl) + tail);
  }
  return set.result;
}

struct DpBaselines {
  double dwork_gap = 0.0;
  double dwork_confidence = 0.0;
  double bun_mi = 0.0;
  double stability_gap = 0.0;
  double jung_gap = 0.0;

  std::map<std::string, double> as_map() const {
    return {{"dwork_gap", dwork_gap},
            {"dwork_confidence", dwork_confidence},
            {"bun_mi", bun_mi},
            {"stability_gap", stability_gap},
            {"jung_gap", jung_gap}};
  }
};

inline DpBaselines dp_literature_baselines(double eps, long long n, double lipschitz, double beta) {
  require(eps > 0.0 && std::isfinite(eps), "eps must be > 0");
  require(n >= 1, "n must be >= 1");
  require(lipschitz > 0.0, "L' must be > 0");
  require(beta > 0.0 && beta < 1.0, "beta must lie in (0,1)");
  const double nd = static_cast<double>(n);
  DpBaselines out;
  out.dwork_gap = eps * lipschitz;
  out.dwork_confidence = 1.0 - 3.0 * std::exp(-eps * eps * nd);
  out.bun_mi = 0.5 * nd * eps * eps;
  out.stability_gap = std::expm1(eps);
  out.jung_gap = std::expm1(eps) + std::sqrt(2.0 * std::log(2.0 / beta) / nd);
  return out;
}

}  // namespace genbound
