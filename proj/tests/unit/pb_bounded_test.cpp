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

#include <gtest/gtest.h>

#include <cmath>

#include "genbound/oracles.hpp"
#include "genbound/pb_bounded.hpp"
#include "genbound/rng.hpp"

namespace genbound {
namespace {

BoundContext ctx(long long n, double beta, double dep, double emp, double range = 1.0) {
  BoundContext c;
  c.n = n;
  c.beta = beta;
  c.dependency = dep;
  c.emp_risk = emp;
  c.range_b = range;
  return c;
}

double complexity_over_n(const BoundContext& c) {
  return (c.dependency + std::log(xi_factor(c.n, c.xi) / c.beta)) / static_cast<double>(c.n);
}

TEST(BoundContext, Validation) {
  EXPECT_THROW(seeger_langford(ctx(0, 0.05, 0, 0)), InputError);
  EXPECT_THROW(seeger_langford(ctx(10, 1.0, 0, 0)), InputError);
  EXPECT_THROW(seeger_langford(ctx(10, 0.05, -1, 0)), InputError);
  EXPECT_THROW(seeger_langford(ctx(10, 0.05, 0, 1.5)), InputError);
  EXPECT_NO_THROW(seeger_langford(ctx(10, 0.05, 0, 1.5, 2.0)));
}

TEST(XiFactor, Examples) {
  EXPECT_DOUBLE_EQ(xi_factor(50, XiMode::kConservative), 12.0);
  EXPECT_DOUBLE_EQ(xi_factor(1, XiMode::kTight), 2.0);
  EXPECT_THROW(xi_factor(0), InputError);
}

TEST(KlInverseUpper, Examples) {
  EXPECT_EQ(kl_inverse_upper(0.37, 0.0), 0.37);
  for (double c : {1e-9, 1e-3, 0.5, 3.0, 30.0}) EXPECT_NEAR(kl_inverse_upper(0.0, c), -std::expm1(-c), 1e-12);
  EXPECT_NEAR(kl_inverse_upper(0.1, 0.05), kl_inverse_brute(0.1, 0.05, 1'000'000), 2e-6);
  EXPECT_NEAR(kl_inverse_upper(0.1, 0.05), 0.22007860110692461786, 1e-12);
  EXPECT_EQ(kl_inverse_upper(0.5, 50.0), 1.0);
  EXPECT_THROW(kl_inverse_upper(1.2, 0.1), InputError);
  EXPECT_THROW(kl_inverse_upper(0.2, -0.1), InputError);
}

TEST(SeegerLangford, Examples) {
  EXPECT_NEAR(seeger_langford(ctx(100, 0.05, 1.0, 0.1)).value, 0.24406840584826372536, 1e-12);
  // emp = 0 and no dependency: 1 - exp(-ln(xi/beta)/n) -> 0.
  double prev = 1.0;
  for (long long n : {10LL, 1000LL, 100000LL, 10000000LL}) {
    const auto c = ctx(n, 0.05, 0.0, 0.0);
    const double v = seeger_langford(c).value;
    EXPECT_NEAR(v, -std::expm1(-complexity_over_n(c)), 1e-13);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(SeegerLangford, VacuousFlagAndNoClamp) {
  const BoundResult r = seeger_langford(ctx(10, 0.05, 100.0, 1.9, 2.0));
  EXPECT_LE(r.value, 2.0);
  const BoundResult m = mcallester(ctx(10, 0.05, 100.0, 0.9));
  EXPECT_GT(m.value, 1.0);
  EXPECT_TRUE(m.vacuous);
}

TEST(SeegerLangford, RangeScaling) {
  const double b = 3.5;
  const auto unit = seeger_langford(ctx(200, 0.1, 4.0, 0.2)).value;
  EXPECT_NEAR(seeger_langford(ctx(200, 0.1, 4.0, 0.2 * b, b)).value, b * unit, 1e-14);
}

TEST(McAllester, Examples) {
  const auto r = mcallester(ctx(100, 0.05, 1.0, 0.3));
  EXPECT_NEAR(r.params.at("gap"), 0.18408103169986110773, 1e-12);
  EXPECT_NEAR(r.value, 0.3 + r.params.at("gap"), 1e-15);
  const auto near_one = mcallester(ctx(100, 1.0 - 1e-12, 0.0, 0.0));
  EXPECT_NEAR(near_one.params.at("gap"), std::sqrt(std::log(xi_factor(100)) / 200.0), 1e-9);
}

TEST(Catoni, UniformLimitAtZeroEmpiricalRisk) {
  for (double dep : {0.0, 5.0, 80.0}) {
    const auto c = ctx(500, 0.05, dep, 0.0);
    EXPECT_NEAR(catoni_uniform(c).value, -std::expm1(-complexity_over_n(c)), 1e-9);
  }
}

TEST(Catoni, SmallLambdaDiverges) {
  const auto c = ctx(500, 0.05, 2.0, 0.1);
  EXPECT_GT(catoni(c, 1e-6).value, 1e3);
  const auto u = catoni_uniform(c);
  EXPECT_GT(u.params.at("lambda") / 500.0, 1e-3 * 1.01);
  EXPECT_LT(u.params.at("lambda") / 500.0, 1e3 * 0.99);
  EXPECT_THROW(catoni(c, 0.0), InputError);
}

TEST(Catoni, UniformBelowEveryFixedLambdaWithUniformBudget) {
  const auto c = ctx(300, 0.05, 3.0, 0.15);
  const double best = catoni_uniform(c).value;
  for (double lambda = 1.0; lambda < 1e5; lambda *= 1.5) EXPECT_LE(best, catoni(c, lambda, CatoniBudget::kUniform).value + 1e-12);
}

TEST(FastRate, ClosedFormAtGammaTwo) {
  const auto c = ctx(400, 0.05, 7.0, 0.2);
  EXPECT_NEAR(fast_rate(c, 2.0, 1.0).value, 2.0 * std::log(2.0) * 0.2 + 2.0 * complexity_over_n(c), 1e-14);
  EXPECT_EQ(kappas(3.0, 1.0).k3, 0.0);
  EXPECT_THROW(fast_rate(c, 1.0, 0.5), InputError);
  EXPECT_THROW(fast_rate(c, 2.0, 1.5), InputError);
}

TEST(FastRate, InterpolatingLimit) {
  const auto c = ctx(400, 0.05, 7.0, 0.0);
  const double u = complexity_over_n(c);
  EXPECT_NEAR(fast_rate(c, 1.0 + 1e-9, std::exp(-u)).value, -std::expm1(-u), 1e-7);
  EXPECT_NEAR(fast_rate_optimal(c).value, -std::expm1(-u), 1e-15);
  EXPECT_NEAR(fast_rate_optimal(c).value, catoni_uniform(c).value, 1e-9);
}

TEST(FastRateOptimal, NeverAboveRandomGammaC) {
  const auto c = ctx(250, 0.05, 12.0, 0.12);
  const double best = fast_rate_optimal(c).value;
  for (std::uint64_t i = 0; i < 100; ++i) {
    PhiloxStream rng(9, i);
    const double gamma = 1.0 + std::exp(8.0 * rng.uniform() - 4.0);
    const double cc = rng.uniform();
    EXPECT_LE(best, fast_rate(c, gamma, cc).value + 1e-12);
  }
}

TEST(FastRateOptimal, MatchesExhaustiveGrid) {
  const auto c = ctx(250, 0.05, 12.0, 0.12);
  double grid = kInf;
  for (int i = 0; i <= 400; ++i)
    for (int j = 1; j <= 400; ++j) {
      const double gamma = 1.0 + std::exp(-6.0 + 12.0 * i / 400.0);
      const double cc = std::exp(-8.0 * (1.0 - j / 400.0));
      grid = std::min(grid, fast_rate(c, gamma, cc).value);
    }
  EXPECT_LE(fast_rate_optimal(c).value, grid + 1e-12);
  EXPECT_NEAR(fast_rate_optimal(c).value, grid, 1e-4);
}

TEST(MixedRate, Examples) {
  const auto c = ctx(100, 0.05, 3.0, 0.0);
  EXPECT_DOUBLE_EQ(mixed_rate(c).value, complexity_over_n(c));
  // Symmetric in (emp, C/n).
  const auto a = ctx(100, 0.05, 3.0, 0.2);
  const double u = complexity_over_n(a);
  EXPECT_NEAR(mixed_rate(a).value, 0.2 + u + std::sqrt(2.0 * 0.2 * u), 1e-15);
}

TEST(Dominance, FiftyByFiftyGrid) {
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) {
      const auto c = ctx(800, 0.05, 1.5 * 800.0 * j / 49.0, 0.6 * i / 49.0);
      const double fr = fast_rate_optimal(c).value, mr = mixed_rate(c).value;
      EXPECT_LE(fr, mr + 1e-9);
      EXPECT_LE(mr, thiemann(c).value + 1e-9);
      EXPECT_LE(mr, rivasplata(c).value + 1e-12);
    }
}

TEST(Thiemann, InfimumBelowLambdaOne) {
  const auto c = ctx(100, 0.05, 3.0, 0.2);
  const double u = complexity_over_n(c);
  EXPECT_LE(thiemann(c).value, 0.2 / 0.5 + u / 0.5);
}

TEST(Monotonicity, DependencyNAndBeta) {
  for (auto f : {seeger_langford, mcallester, catoni_uniform, fast_rate_optimal, mixed_rate, thiemann, rivasplata}) {
    EXPECT_LE(f(ctx(100, 0.05, 1.0, 0.1)).value, f(ctx(100, 0.05, 2.0, 0.1)).value + 1e-12);
    EXPECT_GE(f(ctx(100, 0.05, 1.0, 0.1)).value + 1e-12, f(ctx(100, 0.1, 1.0, 0.1)).value);
    EXPECT_GE(f(ctx(100, 0.05, 1.0, 0.1)).value + 1e-12, f(ctx(1000, 0.05, 1.0, 0.1)).value);
  }
}

TEST(AnytimeAdjust, Examples) {
  EXPECT_DOUBLE_EQ(anytime_adjust(0.05, 1), 6.0 * 0.05 / (kPi * kPi));
  double sum = 0.0, prev = 1.0;
  for (long long t = 1; t <= 1'000'000; ++t) {
    const double b = anytime_adjust(0.05, t);
    EXPECT_LT(b, prev);
    prev = b;
    sum += b;
  }
  EXPECT_LT(sum, 0.05);
  EXPECT_THROW(anytime_adjust(0.05, 0), InputError);
}

}  // namespace
}  // namespace genbound
