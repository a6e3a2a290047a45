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

#include "genbound/core.hpp"
#include "genbound/lambert_w.hpp"
#include "genbound/measures.hpp"

namespace genbound {

inline double xi_factor(long long n, XiMode mode = XiMode::kConservative) {
  require(n >= 1, "xi_factor: n must be >= 1");
  const double nd = static_cast<double>(n);
  return mode == XiMode::kConservative ? 2.0 + std::sqrt(2.0 * nd) : std::sqrt(2.0 * nd + 2.0);
}

// Largest r in [r_hat, 1] with kl(r_hat || r) <= budget.
inline double kl_inverse_upper(double r_hat, double budget) {
  require(r_hat >= 0.0 && r_hat <= 1.0, "kl_inverse_upper: r_hat must lie in [0,1]");
  require(budget >= 0.0, "kl_inverse_upper: budget must be >= 0");
  if (budget == 0.0 || r_hat == 1.0) return r_hat;
  double lo = r_hat;
  double hi = 1.0 - 1e-15;
  if (kl_bernoulli(r_hat, hi) <= budget) return 1.0;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (kl_bernoulli(r_hat, mid) <= budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// kappa(c) = 1 - c(1 - ln c); zero at c = 1.
inline double kappa_of_c(double c) { return 1.0 - c * (1.0 - std::log(c)); }

struct Kappas {
  double k1 = 0.0;  // multiplies the empirical term
  double k2 = 0.0;  // multiplies the complexity term
  double k3 = 0.0;  // additive bias
};

inline Kappas kappas(double gamma, double c) {
  require(gamma > 1.0, "gamma must be > 1");
  require(c > 0.0 && c <= 1.0, "c must lie in (0,1]");
  return {c * gamma * std::log(gamma / (gamma - 1.0)), c * gamma, gamma * kappa_of_c(c)};
}

struct GammaC {
  double gamma = 2.0;
  double c = 1.0;
  double value = kInf;
};

// Minimizes f(gamma, c) over gamma > 1, c in (0,1]: a coarse grid in
// (ln(gamma-1), ln c) followed by alternating golden-section sweeps.
// Grid ties resolve toward the smaller gamma.
inline GammaC optimize_gamma_c(const std::function<double(double, double)>& f) {
  const double s_lo = -14.0, s_hi = 14.0;  // ln(gamma - 1)
  const double q_lo = -30.0, q_hi = 0.0;   // ln c
  auto eval = [&](double s, double q) {
    const double v = f(1.0 + std::exp(s), std::exp(q));
    return std::isnan(v) ? kInf : v;
  };
  const int ns = 57, nq = 61;
  double best = kInf, bs = 0.0, bq = 0.0;
  for (int i = 0; i < ns; ++i) {
    const double s = s_lo + (s_hi - s_lo) * i / (ns - 1);
    for (int j = 0; j < nq; ++j) {
      const double q = q_lo + (q_hi - q_lo) * j / (nq - 1);
      const double v = eval(s, q);
      if (v < best) {
        best = v;
        bs = s;
        bq = q;
      }
    }
  }
  double width_s = (s_hi - s_lo) / (ns - 1);
  double width_q = (q_hi - q_lo) / (nq - 1);
  for (int round = 0; round < 40; ++round) {
    const double prev = best;
    Minimum ms = golden_section_min([&](double s) { return eval(s, bq); },
                                    std::max(s_lo, bs - width_s), std::min(s_hi, bs + width_s), 1e-11);
    if (ms.fx <= best) {
      best = ms.fx;
      bs = ms.x;
    }
    Minimum mq = golden_section_min([&](double q) { return eval(bs, q); },
                                    std::max(q_lo, bq - width_q), std::min(q_hi, bq + width_q), 1e-11);
    if (mq.fx <= best) {
      best = mq.fx;
      bq = mq.x;
    }
    if (eval(bs, q_hi) <= best) {
      best = eval(bs, q_hi);
      bq = q_hi;
    }
    width_s = std::max(width_s * 0.6, 1e-3);
    width_q = std::max(width_q * 0.6, 1e-3);
    if (prev - best <= 1e-15 * std::max(1.0, std::abs(best)) && round > 4) break;
  }
  return {1.0 + std::exp(bs), std::exp(bq), best};
}

namespace detail {

inline double complexity(const BoundContext& ctx) {
  return ctx.dependency + std::log(xi_factor(ctx.n, ctx.xi) / ctx.beta);
}

inline BoundResult finish(const BoundContext& ctx, double value, std::string regime) {
  BoundResult r;
  r.value = value;
  r.regime = std::move(regime);
  r.vacuous = !(value <= ctx.range_b);
  return r;
}

}  // namespace detail

inline BoundResult seeger_langford(const BoundContext& ctx) {
  ctx.validate();
  const double b = ctx.range_b;
  const double budget = detail::complexity(ctx) / static_cast<double>(ctx.n);
  BoundResult r = detail::finish(ctx, b * kl_inverse_upper(ctx.emp_risk / b, budget), "kl_inverse");
  r.params["budget"] = budget;
  return r;
}

inline BoundResult mcallester(const BoundContext& ctx) {
  ctx.validate();
  const double gap = ctx.range_b * std::sqrt(detail::complexity(ctx) / (2.0 * static_cast<double>(ctx.n)));
  BoundResult r = detail::finish(ctx, ctx.emp_risk + gap, "slow_rate");
  r.params["gap"] = gap;
  return r;
}

enum class CatoniBudget { kPlain, kUniform };

namespace detail {
// (1 - exp(-x r - u)) / (1 - exp(-x)) with x = lambda/n.
inline double catoni_unit(double x, double r, double u) { return -std::expm1(-x * r - u) / -std::expm1(-x); }
}  // namespace detail

// Catoni's bound at a fixed lambda; kUniform charges ln(xi/beta) instead
// of ln(1/beta) so that the value holds for all lambda at once.
inline BoundResult catoni(const BoundContext& ctx, double lambda, CatoniBudget budget = CatoniBudget::kPlain) {
  ctx.validate();
  require(lambda > 0.0 && std::isfinite(lambda), "catoni: lambda must be > 0");
  const double nd = static_cast<double>(ctx.n);
  const double log_term = budget == CatoniBudget::kPlain ? std::log(1.0 / ctx.beta) : std::log(xi_factor(ctx.n, ctx.xi) / ctx.beta);
  const double u = (ctx.dependency + log_term) / nd;
  const double b = ctx.range_b;
  BoundResult r = detail::finish(ctx, b * detail::catoni_unit(lambda / nd, ctx.emp_risk / b, u),
                                 budget == CatoniBudget::kPlain ? "fixed_lambda" : "fixed_lambda_uniform");
  r.params["lambda"] = lambda;
  return r;
}

inline BoundResult catoni_uniform(const BoundContext& ctx) {
  ctx.validate();
  const double nd = static_cast<double>(ctx.n);
  const double u = detail::complexity(ctx) / nd;
  const double rr = ctx.emp_risk / ctx.range_b;
  // The formula depends on lambda only through x = lambda/n.
  auto f = [&](double log_x) { return detail::catoni_unit(std::exp(log_x), rr, u); };
  Minimum m = grid_golden_min(f, std::log(1e-3), std::log(1e3), 600, 1e-12);
  BoundResult r = detail::finish(ctx, ctx.range_b * m.fx, "uniform_lambda");
  r.params["lambda"] = std::exp(m.x) * nd;
  r.params["limit_emp0"] = ctx.range_b * -std::expm1(-u);
  return r;
}

inline BoundResult fast_rate(const BoundContext& ctx, double gamma, double c) {
  ctx.validate();
  require(gamma > 1.0 && std::isfinite(gamma), "fast_rate: gamma must be > 1");
  require(c > 0.0 && c <= 1.0, "fast_rate: c must lie in (0,1]");
  const double u = detail::complexity(ctx) / static_cast<double>(ctx.n);
  const Kappas k = kappas(gamma, c);
  const double b = ctx.range_b;
  BoundResult r = detail::finish(ctx, k.k1 * ctx.emp_risk + b * k.k2 * u + b * k.k3, "fixed_gamma_c");
  r.params["gamma"] = gamma;
  r.params["c"] = c;
  return r;
}

namespace detail {

// Optimal gamma for fixed c solves x - ln(1+x) = A with x = 1/(gamma-1),
// A = (c u + kappa(c)) / (c r); returns the unit-range objective there.
inline double fast_rate_at_c(double r, double u, double c, double* gamma_out = nullptr) {
  const double kap = kappa_of_c(c);
  const double a_coef = (c * u + kap) / (c * r);
  const double w = lambert_w_m1_log(1.0 + a_coef);
  const double x = -w - 1.0;
  const double gamma = 1.0 + 1.0 / x;
  if (gamma_out) *gamma_out = gamma;
  return c * gamma * (std::log1p(x) * r + u) + kap * gamma;
}

}  // namespace detail

inline BoundResult fast_rate_optimal(const BoundContext& ctx) {
  ctx.validate();
  const double u = detail::complexity(ctx) / static_cast<double>(ctx.n);
  const double b = ctx.range_b;
  const double rr = ctx.emp_risk / b;
  if (rr == 0.0) {
    // gamma -> 1+ with c = e^{-u}.
    BoundResult r = detail::finish(ctx, b * -std::expm1(-u), "interpolating_limit");
    r.params["gamma"] = 1.0;
    r.params["c"] = std::exp(-u);
    return r;
  }
  auto g = [&](double log_c) { return detail::fast_rate_at_c(rr, u, std::exp(log_c)); };
  Minimum m = grid_golden_min(g, -40.0, 0.0, 200, 1e-10);
  double gamma = 0.0;
  const double c = std::exp(m.x);
  const double value = detail::fast_rate_at_c(rr, u, c, &gamma);
  BoundResult r = detail::finish(ctx, b * value, "optimal_gamma_c");
  r.params["gamma"] = gamma;
  r.params["c"] = c;
  return r;
}

inline BoundResult mixed_rate(const BoundContext& ctx) {
  ctx.validate();
  const double u = detail::complexity(ctx) / static_cast<double>(ctx.n);
  const double rr = ctx.emp_risk / ctx.range_b;
  return detail::finish(ctx, ctx.range_b * (rr + u + std::sqrt(2.0 * rr * u)), "mixed_rate");
}

inline BoundResult thiemann(const BoundContext& ctx) {
  ctx.validate();
  const double u = detail::complexity(ctx) / static_cast<double>(ctx.n);
  const double rr = ctx.emp_risk / ctx.range_b;
  auto f = [&](double lambda) {
    const double h = 1.0 - 0.5 * lambda;
    return rr / h + u / (lambda * h);
  };
  Minimum m = grid_golden_min(f, 1e-6, 2.0 - 1e-6, 400, 1e-12);
  BoundResult r = detail::finish(ctx, ctx.range_b * m.fx, "optimal_lambda");
  r.params["lambda"] = m.x;
  return r;
}

inline BoundResult rivasplata(const BoundContext& ctx) {
  ctx.validate();
  const double u = detail::complexity(ctx) / static_cast<double>(ctx.n);
  const double rr = ctx.emp_risk / ctx.range_b;
  return detail::finish(ctx, ctx.range_b * (rr + u + std::sqrt(2.0 * rr * u + u * u)), "mixed_rate");
}

// Per-step confidence making a sequence of bounds hold simultaneously.
inline double anytime_adjust(double beta, long long t) {
  require(beta > 0.0 && beta < 1.0, "anytime_adjust: beta must lie in (0,1)");
  require(t >= 1, "anytime_adjust: t must be >= 1");
  const double td = static_cast<double>(t);
  return 6.0 * beta / (kPi * kPi * td * td);
}

}  // namespace genbound
