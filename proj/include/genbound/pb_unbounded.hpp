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
#include <functional>
#include <string>

#include "genbound/cgf.hpp"
#include "genbound/core.hpp"
#include "genbound/pb_bounded.hpp"

namespace genbound {

struct MomentAssumption {
  double p = 2.0;
  double m_p = 1.0;

  void validate() const {
    require(p > 1.0, "moment order p must be > 1");
    require(m_p > 0.0 && std::isfinite(m_p), "moment bound m_p must be > 0");
  }
};

// Empirical mean of the loss truncated at t, supplied by the caller.
using TruncatedEmp = std::function<double(double)>;

inline double banerjee(const BoundContext& ctx, const CgfEnvelope& env, double lambda) {
  ctx.validate();
  require(lambda > 0.0 && lambda < env.domain_limit(), "banerjee: lambda outside (0, b)");
  const double nd = static_cast<double>(ctx.n);
  return ((ctx.dependency + std::log(1.0 / ctx.beta)) / nd + psi(env, lambda)) / lambda;
}

enum class UnionMode { kLinear, kGeometric };

inline BoundResult chernoff_analogue_cutoff(const BoundContext& ctx, const CgfEnvelope& env, double cap = kInf,
                                            UnionMode mode = UnionMode::kLinear) {
  ctx.validate();
  require(cap > 0.0, "chernoff_analogue_cutoff: cap must be > 0");
  const double nd = static_cast<double>(ctx.n);
  BoundResult r;
  if (ctx.dependency > nd) {
    r.value = cap;
    r.regime = "esssup";
    r.vacuous = !std::isfinite(cap);
    return r;
  }
  double z;
  if (mode == UnionMode::kLinear) {
    z = (ctx.dependency + std::log(kE * nd / ctx.beta)) / nd;
    r.regime = "linear_union";
  } else {
    z = (kE * std::max(ctx.dependency, 1.0) + std::log((2.0 + std::log(nd)) / ctx.beta)) / nd;
    r.regime = "geometric_union";
  }
  r.value = psi_star_inverse(env, z);
  r.params["budget"] = z;
  r.vacuous = !std::isfinite(r.value);
  return r;
}

struct OpenChernoff {
  BoundResult exact;
  BoundResult linearized;
};

inline OpenChernoff chernoff_analogue_open(const BoundContext& ctx, const CgfEnvelope& env) {
  ctx.validate();
  const double nd = static_cast<double>(ctx.n);
  const double dep = ctx.dependency;
  OpenChernoff out;
  const double z_exact = (dep + std::log(kE * kPi * kPi * (dep + 1.0) * (dep + 1.0) / (6.0 * ctx.beta))) / nd;
  const double z_cor = (1.1 * dep + std::log(10.0 * kE * kPi * kPi / ctx.beta)) / nd;
  out.exact.value = psi_star_inverse(env, z_exact);
  out.exact.params["budget"] = z_exact;
  out.exact.regime = "open_exact";
  out.exact.vacuous = !std::isfinite(out.exact.value);
  out.linearized.value = psi_star_inverse(env, z_cor);
  out.linearized.params["budget"] = z_cor;
  out.linearized.regime = "open_linearized";
  out.linearized.vacuous = !std::isfinite(out.linearized.value);
  return out;
}

enum class EventMode { kCutoff, kGeometric, kOpen };

// Quantizes the dependency into events, pays a union bound over the
// events, and applies the best per-event bound. bucket(level, beta_k) must
// be non-decreasing in level and non-increasing in beta_k.
struct EventSpaceSpec {
  std::function<double(double, double)> bucket;
  double dependency = 0.0;
  double union_size = 1.0;       // cutoff: number of events; geometric: 2 + ln n
  double beta = 0.05;
  EventMode mode = EventMode::kCutoff;
  bool relaxed = true;           // level = dep + 1 instead of floor(dep) + 1
  double event_value = 0.0;      // cutoff event holds while event_value <= event_limit
  double event_limit = kInf;
  double cap = kInf;             // reported outside the event
};

inline BoundResult event_space_optimize(const EventSpaceSpec& spec) {
  require(static_cast<bool>(spec.bucket), "event_space_optimize: missing bucket function");
  require(spec.beta > 0.0 && spec.beta < 1.0, "event_space_optimize: beta must lie in (0,1)");
  require(spec.dependency >= 0.0, "event_space_optimize: dependency must be >= 0");
  require(spec.union_size >= 1.0, "event_space_optimize: union size must be >= 1");
  {
    const double levels[] = {1.0, 2.0, 4.0, 16.0, 64.0};
    const double betas[] = {0.5, 0.1, 1e-3, 1e-6};
    for (double b : betas) {
      double prev = -kInf;
      for (double l : levels) {
        const double v = spec.bucket(l, b);
        require(!(v < prev - 1e-12 * std::max(1.0, std::abs(prev))), "event_space_optimize: bucket bound not monotone in level");
        prev = v;
      }
    }
    for (double l : levels) {
      double prev = -kInf;
      for (double b : betas) {
        const double v = spec.bucket(l, b);
        require(!(v < prev - 1e-12 * std::max(1.0, std::abs(prev))), "event_space_optimize: bucket bound not monotone in budget");
        prev = v;
      }
    }
  }
  BoundResult r;
  if (spec.mode != EventMode::kOpen && spec.event_value > spec.event_limit) {
    r.value = spec.cap;
    r.regime = "esssup";
    r.vacuous = !std::isfinite(spec.cap);
    return r;
  }
  const double dep = spec.dependency;
  double level = spec.relaxed ? dep + 1.0 : std::floor(dep) + 1.0;
  double beta_k = spec.beta;
  switch (spec.mode) {
    case EventMode::kCutoff:
      beta_k = spec.beta / spec.union_size;
      r.regime = "cutoff";
      break;
    case EventMode::kGeometric:
      level = kE * std::max(dep, 1.0);
      beta_k = spec.beta / spec.union_size;
      r.regime = "geometric";
      break;
    case EventMode::kOpen:
      beta_k = 6.0 * spec.beta / (kPi * kPi * level * level);
      r.regime = "open";
      break;
  }
  r.value = spec.bucket(level, beta_k);
  r.params["level"] = level;
  r.params["beta_k"] = beta_k;
  r.vacuous = !std::isfinite(r.value);
  return r;
}

// The complexity that the moment and variance bounds charge per sample.
inline double linearized_complexity(const BoundContext& ctx) {
  const double nd = static_cast<double>(ctx.n);
  return (1.1 * ctx.dependency + std::log(10.0 * kE * kPi * kPi * xi_factor(ctx.n, ctx.xi) / ctx.beta)) / nd;
}

enum class TStarRule { kInverseRoot, kLeakage };

// min over (gamma, c) of k1 * trunc(t*) + m^{1/p} p/(p-1) (k2 y + k3)^{(p-1)/p}.
inline BoundResult moment_tradeoff(double y, const MomentAssumption& mom, const TruncatedEmp& trunc,
                                   TStarRule rule = TStarRule::kInverseRoot) {
  mom.validate();
  require(static_cast<bool>(trunc), "moment bound: missing truncated empirical risk");
  const double p = mom.p;
  const double root_m = std::pow(mom.m_p, 1.0 / p);
  auto tstar = [&](const Kappas& k) {
    if (rule == TStarRule::kLeakage) return root_m * std::pow(k.k2 * y, (p - 1.0) / p);
    return root_m * std::pow(k.k2 * y + k.k3, -1.0 / p);
  };
  auto objective = [&](double gamma, double c) {
    const Kappas k = kappas(gamma, c);
    const double kk = k.k2 * y + k.k3;
    return k.k1 * trunc(tstar(k)) + root_m * (p / (p - 1.0)) * std::pow(kk, (p - 1.0) / p);
  };
  const GammaC best = optimize_gamma_c(objective);
  BoundResult r;
  r.value = best.value;
  r.params["gamma"] = best.gamma;
  r.params["c"] = best.c;
  r.params["t_star"] = tstar(kappas(best.gamma, best.c));
  r.regime = "t_star";
  r.vacuous = !std::isfinite(r.value);
  return r;
}

namespace detail {
// inf over (gamma, c) of k1 a + k2 b + k3 d, for 0 <= a <= d and d > 0.
inline double linear_kappa_min(double a, double b, double d) {
  const double r = std::clamp(a / d, 0.0, 1.0);
  const double u = b / d;
  if (u <= 0.0) return a;
  if (r == 0.0) return d * -std::expm1(-u);
  Minimum m = grid_golden_min([&](double log_c) { return fast_rate_at_c(r, u, std::exp(log_c)); }, -40.0, 0.0, 200, 1e-10);
  return d * m.fx;
}
}  // namespace detail

enum class TruncationVariant { kAdaptive, kFixedLambda, kSimultaneous };

inline BoundResult truncation_moment_bound(const BoundContext& ctx, const MomentAssumption& mom,
                                           const TruncatedEmp& trunc, TruncationVariant variant) {
  ctx.validate();
  mom.validate();
  require(static_cast<bool>(trunc), "truncation_moment_bound: missing truncated empirical risk");
  const double nd = static_cast<double>(ctx.n);
  const double p = mom.p;
  switch (variant) {
    case TruncationVariant::kAdaptive: {
      BoundResult r = moment_tradeoff(linearized_complexity(ctx), mom, trunc);
      r.regime = "adaptive";
      return r;
    }
    case TruncationVariant::kFixedLambda: {
      // lambda = (n^{p-1}/m_p)^{1/p}, truncation point n/lambda = (m_p n)^{1/p}.
      const double t = std::pow(mom.m_p * nd, 1.0 / p);
      const double scale = std::pow(mom.m_p / std::pow(nd, p - 1.0), 1.0 / p);
      const double complexity = ctx.dependency + std::log(xi_factor(ctx.n, ctx.xi) / ctx.beta);
      const double a = std::min(trunc(t), t);
      const double value = detail::linear_kappa_min(a, scale * complexity, scale * nd) + scale / (p - 1.0);
      BoundResult r;
      r.value = value;
      r.params["t"] = t;
      r.params["lambda"] = nd / t;
      r.regime = "fixed_lambda";
      r.vacuous = !std::isfinite(value);
      return r;
    }
    case TruncationVariant::kSimultaneous: {
      const double complexity = ctx.dependency + std::log(10.0 * kE * kPi * kPi * xi_factor(ctx.n, ctx.xi) / ctx.beta);
      auto at = [&](double log_x) {
        // x = lambda / n, truncation point 1/x.
        const double x = std::exp(log_x);
        const double t = 1.0 / x;
        const double a = std::min(trunc(t), t);
        return detail::linear_kappa_min(a, complexity / (x * nd), t) + mom.m_p / (p - 1.0) * std::pow(x, p - 1.0);
      };
      Minimum m = grid_golden_min(at, std::log(1e-8), std::log(1e4), 240, 1e-9);
      BoundResult r;
      r.value = m.fx;
      r.params["lambda"] = std::exp(m.x) * nd;
      r.params["t"] = std::exp(-m.x);
      r.regime = "simultaneous";
      r.vacuous = !std::isfinite(r.value);
      return r;
    }
  }
  return {};
}

namespace detail {
// (1 - 2 sqrt(K))_+^{-1} (k1 emp + 2 sigma sqrt(K)) with K = k2 y + k3.
inline double variance_form(double emp, double sigma2, double y, double gamma, double c) {
  const Kappas k = kappas(gamma, c);
  const double kk = k.k2 * y + k.k3;
  const double root = std::sqrt(kk);
  const double denom = 1.0 - 2.0 * root;
  if (denom <= 0.0) return kInf;
  return (k.k1 * emp + 2.0 * std::sqrt(sigma2) * root) / denom;
}
}  // namespace detail

inline BoundResult bounded_variance_bound(const BoundContext& ctx, double sigma2) {
  ctx.validate();
  require(sigma2 > 0.0 && std::isfinite(sigma2), "bounded_variance_bound: sigma^2 must be > 0");
  const double y = linearized_complexity(ctx);
  const GammaC best = optimize_gamma_c([&](double g, double c) { return detail::variance_form(ctx.emp_risk, sigma2, y, g, c); });
  BoundResult r;
  r.value = best.value;
  r.params["gamma"] = best.gamma;
  r.params["c"] = best.c;
  r.params["complexity"] = y;
  r.regime = std::isfinite(best.value) ? "optimal_gamma_c" : "prefactor_zero";
  r.vacuous = !std::isfinite(best.value);
  return r;
}

// Same form with ln(1 + chi^2) in place of the relative entropy, at a
// fixed (gamma, c); the default pair gives k1 = k2 = e/(e-1), k3 = 0.
inline BoundResult variance_relaxation_chi2(const BoundContext& ctx_chi2, double sigma2,
                                            double gamma = kE / (kE - 1.0), double c = 1.0) {
  ctx_chi2.validate();
  require(sigma2 > 0.0 && std::isfinite(sigma2), "variance_relaxation_chi2: sigma^2 must be > 0");
  BoundContext kl_ctx = ctx_chi2;
  kl_ctx.dependency = std::log1p(ctx_chi2.dependency);
  const double y = linearized_complexity(kl_ctx);
  BoundResult r;
  r.value = detail::variance_form(ctx_chi2.emp_risk, sigma2, y, gamma, c);
  r.params["gamma"] = gamma;
  r.params["c"] = c;
  r.regime = std::isfinite(r.value) ? "fixed_gamma_c" : "prefactor_zero";
  r.vacuous = !std::isfinite(r.value);
  return r;
}

struct Chi2Baselines {
  double chebyshev = 0.0;       // emp + sqrt(sigma^2 (chi^2 + 1) / (n beta))
  double chebyshev_root = 0.0;  // emp + sqrt(sigma^2 sqrt(chi^2 + 1) / (n beta))
  double quadratic = 0.0;       // emp + sqrt((chi^2 + (sigma^2/beta)^2) / (2n))
};

inline Chi2Baselines chi2_variance_baselines(const BoundContext& ctx_chi2, double sigma2) {
  ctx_chi2.validate();
  require(sigma2 > 0.0 && std::isfinite(sigma2), "chi2_variance_baselines: sigma^2 must be > 0");
  const double nd = static_cast<double>(ctx_chi2.n);
  const double chi2 = ctx_chi2.dependency;
  const double beta = ctx_chi2.beta;
  const double emp = ctx_chi2.emp_risk;
  Chi2Baselines out;
  out.chebyshev = emp + std::sqrt(sigma2 * (chi2 + 1.0) / (nd * beta));
  out.chebyshev_root = emp + std::sqrt(sigma2 * std::sqrt(chi2 + 1.0) / (nd * beta));
  const double sb = sigma2 / beta;
  out.quadratic = emp + std::sqrt((chi2 + sb * sb) / (2.0 * nd));
  return out;
}

inline double martingale_xi_prime(long long n) {
  const double nd = static_cast<double>(n);
  return 2.0 * kE * nd * (nd + 1.0) * (nd + 1.0) * std::log(kE * nd);
}

inline BoundResult martingale_second_moment(const BoundContext& ctx, double variance_proxy, double cap = kInf) {
  ctx.validate();
  require(variance_proxy >= 0.0 && std::isfinite(variance_proxy), "martingale_second_moment: variance proxy must be >= 0");
  const double nd = static_cast<double>(ctx.n);
  BoundResult r;
  if (variance_proxy * ctx.dependency > nd * nd) {
    r.value = cap;
    r.regime = "esssup";
    r.vacuous = !std::isfinite(cap);
    return r;
  }
  r.value = 2.0 / std::sqrt(6.0) *
            std::sqrt((variance_proxy + 1.0) * (ctx.dependency + std::log(martingale_xi_prime(ctx.n) / ctx.beta)));
  r.regime = "event";
  r.vacuous = !std::isfinite(r.value);
  return r;
}

// Engine instances reproducing the closed forms above.
inline EventSpaceSpec chernoff_cutoff_events(const BoundContext& ctx, const CgfEnvelope& env, double cap,
                                             UnionMode mode) {
  const double nd = static_cast<double>(ctx.n);
  EventSpaceSpec s;
  s.bucket = [env, nd](double level, double beta_k) { return psi_star_inverse(env, (level + std::log(1.0 / beta_k)) / nd); };
  s.dependency = ctx.dependency;
  s.beta = ctx.beta;
  s.mode = mode == UnionMode::kLinear ? EventMode::kCutoff : EventMode::kGeometric;
  s.union_size = mode == UnionMode::kLinear ? nd : 2.0 + std::log(nd);
  s.event_value = ctx.dependency;
  s.event_limit = nd;
  s.cap = cap;
  return s;
}

inline EventSpaceSpec chernoff_open_events(const BoundContext& ctx, const CgfEnvelope& env) {
  const double nd = static_cast<double>(ctx.n);
  EventSpaceSpec s;
  s.bucket = [env, nd](double level, double beta_k) { return psi_star_inverse(env, (level + std::log(1.0 / beta_k)) / nd); };
  s.dependency = ctx.dependency;
  s.beta = ctx.beta;
  s.mode = EventMode::kOpen;
  return s;
}

inline EventSpaceSpec martingale_events(const BoundContext& ctx, double variance_proxy, double cap) {
  const double nd = static_cast<double>(ctx.n);
  EventSpaceSpec s;
  s.bucket = [variance_proxy, nd](double level, double beta_k) {
    return 2.0 / std::sqrt(6.0) * std::sqrt((variance_proxy + 1.0) * (level + std::log(2.0 * (nd + 1.0) * (nd + 1.0) / beta_k)));
  };
  s.dependency = ctx.dependency;
  s.beta = ctx.beta;
  s.mode = EventMode::kCutoff;
  s.union_size = nd * std::log(kE * nd);
  s.event_value = variance_proxy * ctx.dependency;
  s.event_limit = nd * nd;
  s.cap = cap;
  return s;
}

}  // namespace genbound
