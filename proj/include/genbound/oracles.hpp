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
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include "genbound/core.hpp"
#include "genbound/expected_bounds.hpp"
#include "genbound/measures.hpp"
#include "genbound/parallel.hpp"
#include "genbound/rng.hpp"

namespace genbound {

inline constexpr std::size_t kMcBlock = 4096;

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long long replicates = 0;
};

namespace detail {

struct BlockMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Runs value(stream, replicate) over fixed-size blocks and reduces the
// block sums pairwise, so the result is independent of the thread count.
template <class Fn>
McEstimate mc_mean(long long replicates, std::uint64_t seed, Fn&& value) {
  require(replicates >= 2, "need at least two replicates");
  const auto total = static_cast<std::size_t>(replicates);
  const std::size_t blocks = (total + kMcBlock - 1) / kMcBlock;
  std::vector<BlockMoments> parts(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t lo = b * kMcBlock;
    const std::size_t hi = std::min(total, lo + kMcBlock);
    std::vector<double> v(hi - lo), sq(hi - lo);
    for (std::size_t r = lo; r < hi; ++r) {
      PhiloxStream stream(seed, r);
      v[r - lo] = value(stream, r);
      sq[r - lo] = v[r - lo] * v[r - lo];
    }
    parts[b] = {pairwise_sum(v), pairwise_sum(sq)};
  });
  std::vector<double> s(blocks), q(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    s[b] = parts[b].sum;
    q[b] = parts[b].sum_sq;
  }
  const double n = static_cast<double>(total);
  const double mean = pairwise_sum(s) / n;
  const double var = std::max(0.0, (pairwise_sum(q) - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n), replicates};
}

}  // namespace detail

// ---- Gaussian location model: Z_i ~ N(mu, sigma^2 I_d), W = mean, loss |w - z|.

struct GlmSpec {
  long long d = 1;
  double sigma2 = 1.0;
  long long n = 2;
  std::vector<double> mu;  // empty means the origin

  void validate() const {
    require(d >= 1, "GLM: d must be >= 1");
    require(n >= 1, "GLM: n must be >= 1");
    require(sigma2 > 0.0 && std::isfinite(sigma2), "GLM: sigma^2 must be > 0");
    require(mu.empty() || static_cast<long long>(mu.size()) == d, "GLM: mu must have d entries");
  }
};

// Gamma((d+1)/2) / Gamma(d/2), the mean of a chi variable over sqrt(2).
inline double chi_mean_ratio(long long d) {
  const double dd = static_cast<double>(d);
  return std::exp(std::lgamma(0.5 * (dd + 1.0)) - std::lgamma(0.5 * dd));
}

inline double glm_exact_gen(const GlmSpec& spec) {
  spec.validate();
  const double nd = static_cast<double>(spec.n);
  return std::sqrt(2.0 * spec.sigma2 / nd) * (std::sqrt(nd + 1.0) - std::sqrt(nd - 1.0)) * chi_mean_ratio(spec.d);
}

// Unbiased estimate of |W - Z'| - |W - Z_1| using W = (Z_1 + sum_{i>1} Z_i)/n,
// where the rest of the sample enters only through its sum.
inline McEstimate glm_mc_gen(const GlmSpec& spec, long long replicates, std::uint64_t seed) {
  spec.validate();
  require(replicates >= 100, "glm_mc_gen: need at least 100 replicates");
  const auto d = static_cast<std::size_t>(spec.d);
  const double nd = static_cast<double>(spec.n);
  const double sd = std::sqrt(spec.sigma2);
  const double sd_rest = std::sqrt(spec.sigma2 * (nd - 1.0));
  return detail::mc_mean(replicates, seed, [&](PhiloxStream& rng, std::size_t) {
    double fresh = 0.0, own = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double m = spec.mu.empty() ? 0.0 : spec.mu[k];
      const double z1 = m + sd * rng.normal();
      const double rest = (nd - 1.0) * m + sd_rest * rng.normal();
      const double zp = m + sd * rng.normal();
      const double w = (z1 + rest) / nd;
      fresh += (w - zp) * (w - zp);
      own += (w - z1) * (w - z1);
    }
    return std::sqrt(fresh) - std::sqrt(own);
  });
}

inline double glm_single_letter_mi(const GlmSpec& spec) {
  spec.validate();
  require(spec.n >= 2, "glm_single_letter_mi: n must be >= 2");
  const double nd = static_cast<double>(spec.n);
  return 0.5 * static_cast<double>(spec.d) * std::log(nd / (nd - 1.0));
}

// Single-letter MI bound for d = 1, where |W' - Z| is sigma^2(1 + 1/n)-sub-Gaussian
// on the relevant side.
inline double glm_single_letter_mi_bound(const GlmSpec& spec) {
  require(spec.d == 1, "glm_single_letter_mi_bound: the sub-Gaussian proxy is only known for d = 1");
  const double nd = static_cast<double>(spec.n);
  return psi_star_inverse(CgfEnvelope::sub_gaussian(spec.sigma2 * (1.0 + 1.0 / nd)), glm_single_letter_mi(spec));
}

enum class GlmWassersteinVariant { kFull, kSingleLetter, kRandomSubset };

// Expected Wasserstein terms; the single-letter one is a W2 upper bound.
inline double glm_wasserstein_terms(const GlmSpec& spec, GlmWassersteinVariant variant) {
  spec.validate();
  require(spec.n >= 2, "glm_wasserstein_terms: n must be >= 2");
  const double nd = static_cast<double>(spec.n);
  const double g = chi_mean_ratio(spec.d);
  switch (variant) {
    case GlmWassersteinVariant::kFull:
      return std::sqrt(4.0 * spec.sigma2 / nd) * g;
    case GlmWassersteinVariant::kSingleLetter:
      return std::sqrt(2.0 * spec.sigma2) / nd * g + std::sqrt(spec.sigma2 * static_cast<double>(spec.d) / (nd * nd * nd));
    case GlmWassersteinVariant::kRandomSubset:
      return std::sqrt(4.0 * spec.sigma2) / nd * g;
  }
  return kInf;
}

// ---- Gradient-descent counterexample on coordinate vectors.

struct GdCounterexampleSpec {
  long long n = 1;
  long long d = 0;      // 0 means 2 n^2
  long long T = 0;      // 0 means n^2
  double eta = 0.0;     // 0 means 1 / (n sqrt n)
  std::uint64_t seed = 0;

  GdCounterexampleSpec resolved() const {
    require(n >= 1, "gd counterexample: n must be >= 1");
    GdCounterexampleSpec s = *this;
    const double nd = static_cast<double>(n);
    if (s.d == 0) s.d = 2 * n * n;
    if (s.T == 0) s.T = n * n;
    if (s.eta == 0.0) s.eta = 1.0 / (nd * std::sqrt(nd));
    require(s.d >= 1 && s.T >= 1 && s.eta > 0.0, "gd counterexample: d, T, eta must be positive");
    return s;
  }
};

struct GdReport {
  double mean_gen = 0.0;            // (1/n) E|sum R_i|, Rademacher ERM construction
  double mean_gen_std_error = 0.0;
  double khintchine_lb = 0.0;       // 1 / sqrt(2n)
  double gd_gen = 0.0;              // generalization error of the GD iterate
  double gd_gen_std_error = 0.0;
  double p_event_E = 0.0;           // all 2n supersample draws distinct
  double p_event_E_floor = 0.0;     // (1 - (2n-1)/d)^(2n-1)
  double decode_error_given_E = 0.0;
  long long replicates_E = 0;
  long long replicates = 0;
};

inline GdReport gd_counterexample_run(const GdCounterexampleSpec& raw, long long replicates) {
  const GdCounterexampleSpec spec = raw.resolved();
  require(replicates >= 2, "gd counterexample: need at least two replicates");
  const long long n = spec.n;
  const double nd = static_cast<double>(n);
  const auto d = static_cast<std::uint64_t>(spec.d);
  const double eta_t = spec.eta * static_cast<double>(spec.T);

  struct Rep {
    double rademacher = 0.0;
    double gd_gen = 0.0;
    bool event = false;
    long long decode_errors = 0;
  };
  const auto total = static_cast<std::size_t>(replicates);
  std::vector<Rep> reps(total);
  parallel_for((total + kMcBlock - 1) / kMcBlock, [&](std::size_t b) {
    const std::size_t hi = std::min(total, (b + 1) * kMcBlock);
    std::vector<std::uint64_t> sup(2 * n), train(n), sorted;
    for (std::size_t r = b * kMcBlock; r < hi; ++r) {
      PhiloxStream rng(spec.seed, r);
      Rep& out = reps[r];
      // Supersample pairs (2i, 2i+1) and selector bits.
      for (auto& k : sup) k = rng.below(d);
      std::vector<int> u(n);
      for (long long i = 0; i < n; ++i) {
        u[i] = static_cast<int>(rng.next_u32() & 1u);
        train[i] = sup[2 * i + u[i]];
      }
      sorted = sup;
      std::sort(sorted.begin(), sorted.end());
      out.event = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      // Zbar has entries count_k / n on the training coordinates.
      std::vector<std::uint64_t> tr = train;
      std::sort(tr.begin(), tr.end());
      std::vector<std::pair<std::uint64_t, double>> zbar;
      for (std::size_t i = 0; i < tr.size();) {
        std::size_t j = i;
        while (j < tr.size() && tr[j] == tr[i]) ++j;
        zbar.emplace_back(tr[i], static_cast<double>(j - i) / nd);
        i = j;
      }
      double norm2 = 0.0;
      for (const auto& e : zbar) norm2 += e.second * e.second;
      const double norm = std::sqrt(norm2);
      const double scale = eta_t * norm <= 1.0 ? eta_t : 1.0 / norm;
      // W = scale * Zbar; gen = <W, Zbar> - <W, E Z> with E Z = (1/d) 1.
      double w_sum = 0.0;
      for (const auto& e : zbar) w_sum += scale * e.second;
      out.gd_gen = scale * norm2 - w_sum / static_cast<double>(d);
      auto w_at = [&](std::uint64_t k) {
        auto it = std::lower_bound(zbar.begin(), zbar.end(), std::make_pair(k, -kInf));
        return it != zbar.end() && it->first == k ? scale * it->second : 0.0;
      };
      if (out.event) {
        for (long long i = 0; i < n; ++i) {
          const bool nz0 = w_at(sup[2 * i]) != 0.0;
          const bool nz1 = w_at(sup[2 * i + 1]) != 0.0;
          const int guess = nz1 && !nz0 ? 1 : 0;
          if (nz0 == nz1 || guess != u[i]) ++out.decode_errors;
        }
      }
      long long sum = 0;
      for (long long i = 0; i < n; ++i) sum += (rng.next_u32() & 1u) ? 1 : -1;
      out.rademacher = static_cast<double>(std::llabs(sum)) / nd;
    }
  });

  auto moments = [&](auto field) {
    std::vector<double> v(total), sq(total);
    for (std::size_t r = 0; r < total; ++r) {
      v[r] = field(reps[r]);
      sq[r] = v[r] * v[r];
    }
    const double m = pairwise_sum(v) / static_cast<double>(total);
    const double var = std::max(0.0, (pairwise_sum(sq) - static_cast<double>(total) * m * m) / static_cast<double>(total - 1));
    return std::pair<double, double>{m, std::sqrt(var / static_cast<double>(total))};
  };
  GdReport rep;
  rep.replicates = replicates;
  std::tie(rep.mean_gen, rep.mean_gen_std_error) = moments([](const Rep& x) { return x.rademacher; });
  std::tie(rep.gd_gen, rep.gd_gen_std_error) = moments([](const Rep& x) { return x.gd_gen; });
  rep.khintchine_lb = 1.0 / std::sqrt(2.0 * nd);
  long long events = 0, errors = 0;
  for (const auto& x : reps) {
    events += x.event ? 1 : 0;
    errors += x.decode_errors;
  }
  rep.replicates_E = events;
  rep.p_event_E = static_cast<double>(events) / static_cast<double>(total);
  rep.decode_error_given_E = events > 0 ? static_cast<double>(errors) / (static_cast<double>(events) * nd) : 0.0;
  const double m = 2.0 * nd - 1.0;
  rep.p_event_E_floor = std::pow(std::max(0.0, 1.0 - m / static_cast<double>(d)), m);
  return rep;
}

// ---- SGLD on a two-dimensional quadratic problem.

struct SgldProblem {
  long long n = 50;          // training-set size
  long long batch = 5;
  long long steps = 200;
  double step_c = 0.5;       // eta_t = step_c / t, sigma_t^2 = eta_t
  double clip = 1.0 / std::sqrt(2.0);  // gradient-norm cap L
  double loss_scale = 1.0;   // loss = loss_scale * |w - z|^2 / 8, z uniform on [-1,1]^2
  long long replicates = 64;
  std::uint64_t seed = 0;

  void validate() const {
    require(n >= 2, "sgld: n must be >= 2");
    require(batch >= 1 && batch <= n, "sgld: batch must lie in [1, n]");
    require(steps >= 1, "sgld: steps must be >= 1");
    require(step_c > 0.0, "sgld: step constant must be > 0 (sigma_t = 0 leaves the bound undefined)");
    require(clip >= 0.0, "sgld: clip must be >= 0");
    require(loss_scale >= 0.0 && loss_scale <= 1.0, "sgld: loss scale must lie in [0,1]");
    require(replicates >= 2, "sgld: need at least two replicates");
  }
};

struct SgldReport {
  double pensia_mi = 0.0;           // (d/2) sum ln(1 + eta^2 L^2 / (d sigma^2))
  double pensia_bound = 0.0;        // sqrt(range^2 I / (2n))
  double incoherence_bound = 0.0;   // trace-based incoherence estimate
  double two_sample_bound = 0.0;    // illustrative: depends on the sigmoid estimator
  double mc_gen_estimate = 0.0;
  double mc_gen_std_error = 0.0;
  bool incoherence_below_pensia = false;
};

inline SgldReport sgld_trace_demo(const SgldProblem& p) {
  p.validate();
  constexpr int kDim = 2;
  const auto n = static_cast<std::size_t>(p.n);
  const auto b = static_cast<std::size_t>(p.batch);
  const double range = p.loss_scale;  // loss lies in [0, loss_scale] on the box
  std::vector<SgldStep> schedule(static_cast<std::size_t>(p.steps));
  for (long long t = 1; t <= p.steps; ++t) {
    const double eta = p.step_c / static_cast<double>(t);
    schedule[t - 1] = {eta, eta, 0.0};
  }
  const double lip = p.loss_scale == 0.0 ? 0.0 : p.clip;

  struct Rep {
    double gen = 0.0, incoherence = 0.0, two_sample = 0.0;
  };
  const auto total = static_cast<std::size_t>(p.replicates);
  std::vector<Rep> reps(total);
  using Vec = std::array<double, kDim>;
  auto grad = [&](const Vec& w, const Vec& z) {
    Vec g{};
    double norm = 0.0;
    for (int k = 0; k < kDim; ++k) {
      g[k] = p.loss_scale * (w[k] - z[k]) / 4.0;
      norm += g[k] * g[k];
    }
    norm = std::sqrt(norm);
    if (norm > p.clip && norm > 0.0)
      for (auto& x : g) x *= p.clip / norm;
    return g;
  };
  auto sigmoid = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  parallel_for(total, [&](std::size_t r) {
    PhiloxStream rng(p.seed, r);
    std::vector<Vec> sup(2 * n);
    for (auto& z : sup)
      for (auto& x : z) x = 2.0 * rng.uniform() - 1.0;
    std::vector<int> u(n);
    std::vector<Vec> train(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = static_cast<int>(rng.next_u32() & 1u);
      train[i] = sup[2 * i + u[i]];
    }
    Vec w{};
    std::vector<double> inc_sum(n, 0.0), two_sum(n, 0.0), llr(n, 0.0);
    std::vector<std::size_t> idx(n);
    std::vector<Vec> g(n);
    for (long long t = 1; t <= p.steps; ++t) {
      const SgldStep& s = schedule[t - 1];
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      for (std::size_t k = 0; k < b; ++k) std::swap(idx[k], idx[k + rng.below(n - k)]);
      for (std::size_t i = 0; i < n; ++i) g[i] = grad(w, train[i]);
      Vec total_g{};
      for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k < kDim; ++k) total_g[k] += g[i][k];
      Vec batch_g{};
      for (std::size_t k = 0; k < b; ++k)
        for (int c = 0; c < kDim; ++c) batch_g[c] += g[idx[k]][c];
      // Per-sample statistics for the indices in this batch.
      Vec mean_step{};
      for (int c = 0; c < kDim; ++c) mean_step[c] = w[c] - s.eta * batch_g[c] / static_cast<double>(b);
      Vec raw{}, next{};
      const double sd = std::sqrt(s.sigma2);
      for (int c = 0; c < kDim; ++c) {
        raw[c] = mean_step[c] + sd * rng.normal();
        next[c] = std::clamp(raw[c], -1.0, 1.0);
      }
      for (std::size_t k = 0; k < b; ++k) {
        const std::size_t j = idx[k];
        double inc = 0.0, two = 0.0;
        const Vec g0 = grad(w, sup[2 * j]);
        const Vec g1 = grad(w, sup[2 * j + 1]);
        for (int c = 0; c < kDim; ++c) {
          const double others = (total_g[c] - g[j][c]) / static_cast<double>(n - 1);
          inc += (g[j][c] - others) * (g[j][c] - others);
          two += (g0[c] - g1[c]) * (g0[c] - g1[c]);
        }
        inc_sum[j] += s.eta * s.eta / s.sigma2 * inc;
        const double pi = sigmoid(llr[j]);
        const double miss = static_cast<double>(u[j]) - pi;
        two_sum[j] += s.eta * s.eta / s.sigma2 * miss * miss * two;
        // Log-likelihood ratio of U_j = 1 vs 0 from this step's Gaussian
        // transition before projection.
        const Vec& own = u[j] ? g1 : g0;
        double y0 = 0.0, y1 = 0.0;
        for (int c = 0; c < kDim; ++c) {
          const double pre = raw[c];
          const double base = w[c] - s.eta * (batch_g[c] - own[c]) / static_cast<double>(b);
          const double m0 = base - s.eta * g0[c] / static_cast<double>(b);
          const double m1 = base - s.eta * g1[c] / static_cast<double>(b);
          y0 += (pre - m0) * (pre - m0);
          y1 += (pre - m1) * (pre - m1);
        }
        llr[j] += (y0 - y1) / (2.0 * s.sigma2);
      }
      w = next;
    }
    std::vector<double> inc_roots(n), two_roots(n), emp(n);
    for (std::size_t j = 0; j < n; ++j) {
      inc_roots[j] = std::sqrt(inc_sum[j]);
      two_roots[j] = std::sqrt(two_sum[j]);
      double dist = 0.0;
      for (int c = 0; c < kDim; ++c) dist += (w[c] - train[j][c]) * (w[c] - train[j][c]);
      emp[j] = p.loss_scale * dist / 8.0;
    }
    double w2 = 0.0;
    for (double x : w) w2 += x * x;
    const double population = p.loss_scale * (w2 + 2.0 / 3.0) / 8.0;
    const double nd = static_cast<double>(n);
    reps[r].gen = population - pairwise_sum(emp) / nd;
    reps[r].incoherence = range / (std::sqrt(2.0) * static_cast<double>(b)) * pairwise_sum(inc_roots) / nd;
    reps[r].two_sample = std::sqrt(2.0) * range / static_cast<double>(b) * pairwise_sum(two_roots) / nd;
  });

  SgldReport rep;
  std::vector<double> gen(total), gen_sq(total), inc(total), two(total);
  for (std::size_t r = 0; r < total; ++r) {
    gen[r] = reps[r].gen;
    gen_sq[r] = gen[r] * gen[r];
    inc[r] = reps[r].incoherence;
    two[r] = reps[r].two_sample;
  }
  const double td = static_cast<double>(total);
  rep.mc_gen_estimate = pairwise_sum(gen) / td;
  const double var = std::max(0.0, (pairwise_sum(gen_sq) - td * rep.mc_gen_estimate * rep.mc_gen_estimate) / (td - 1.0));
  rep.mc_gen_std_error = std::sqrt(var / td);
  rep.incoherence_bound = pairwise_sum(inc) / td;
  rep.two_sample_bound = pairwise_sum(two) / td;
  rep.pensia_mi = sgld_pensia(schedule, kDim, lip);
  rep.pensia_bound = std::sqrt(range * range * rep.pensia_mi / (2.0 * static_cast<double>(p.n)));
  rep.incoherence_below_pensia = rep.incoherence_bound <= rep.pensia_bound;
  return rep;
}

// ---- Brute-force oracles.

// Largest grid point q = k / grid_size with kl(r_hat || q) <= budget.
inline double kl_inverse_brute(double r_hat, double budget, long long grid_size) {
  require(grid_size >= 10000, "kl_inverse_brute: grid_size must be >= 1e4");
  require(r_hat >= 0.0 && r_hat <= 1.0 && budget >= 0.0, "kl_inverse_brute: bad arguments");
  const double g = static_cast<double>(grid_size);
  double best = r_hat;
  for (long long k = 0; k <= grid_size; ++k) {
    const double q = static_cast<double>(k) / g;
    if (q >= r_hat && kl_bernoulli(r_hat, q) <= budget) best = q;
  }
  return best;
}

namespace detail {
inline long long count_compositions(long long parts, long long remaining) {
  if (parts == 1) return 1;
  long long total = 0;
  for (long long first = 0; first <= remaining; ++first) total += count_compositions(parts - 1, remaining - first);
  return total;
}
}  // namespace detail

// Counts types by walking every composition of n into Z non-negative parts.
inline long long types_enumerate(long long Z, long long n) {
  require(Z >= 1 && n >= 0, "types_enumerate: Z >= 1 and n >= 0 required");
  require(std::pow(static_cast<double>(n + 1), static_cast<double>(Z - 1)) <= 1e7,
          "types_enumerate: more than 1e7 compositions, refusing to enumerate");
  return detail::count_compositions(Z, n);
}

// ---- Random finite mixtures for the mixture-KL inequalities.

struct MixtureCase {
  DiscreteDist p;
  MixtureSpec mix;
};

namespace detail {
inline std::vector<double> random_simplex_point(PhiloxStream& rng, std::size_t k) {
  std::vector<double> v(k);
  double s = 0.0;
  for (auto& x : v) {
    x = -std::log(rng.uniform());
    s += x;
  }
  for (auto& x : v) x /= s;
  return v;
}
}  // namespace detail

// Alphabet in [2, 8], between 1 and 5 components, Dirichlet(1) draws.
inline MixtureCase random_mixture_case(std::uint64_t seed, std::uint64_t index) {
  PhiloxStream rng(seed, index);
  const std::size_t alphabet = 2 + rng.below(7);
  const std::size_t comps = 1 + rng.below(5);
  std::vector<DiscreteDist> c;
  for (std::size_t b = 0; b < comps; ++b) c.emplace_back(detail::random_simplex_point(rng, alphabet));
  MixtureSpec mix(std::move(c), detail::random_simplex_point(rng, comps));
  return {DiscreteDist(detail::random_simplex_point(rng, alphabet)), std::move(mix)};
}

}  // namespace genbound
