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
#include <vector>

#include "genbound/expected_bounds.hpp"
#include "genbound/rng.hpp"

namespace genbound {
namespace {

const CgfEnvelope kUnitGaussian = CgfEnvelope::sub_gaussian(1.0);

TEST(MiGapBound, Examples) {
  EXPECT_EQ(mi_gap_bound(0.0, 10, kUnitGaussian), 0.0);
  const double mi = 0.5 * std::log(2.0);
  EXPECT_NEAR(mi_gap_bound(mi, 2, kUnitGaussian), std::sqrt(2.0 * mi / 2.0), 1e-15);
  EXPECT_THROW(mi_gap_bound(-1.0, 10, kUnitGaussian), InputError);
  EXPECT_THROW(mi_gap_bound(1.0, 0, kUnitGaussian), InputError);
}

TEST(ExpectedFastRate, InterpolatingAndZeroDependencyLimits) {
  const double mi = 30.0;
  const long long n = 200;
  EXPECT_NEAR(expected_fast_rate_optimal(mi, n, 0.0).value, -std::expm1(-mi / n), 1e-15);
  EXPECT_NEAR(expected_fast_rate(mi, n, 0.0, 1.0 + 1e-10, std::exp(-mi / n)), -std::expm1(-mi / n), 1e-8);
  // Zero dependency: c = 1 kills the constant term and gamma -> inf sends k1 to 1.
  EXPECT_NEAR(expected_fast_rate(0.0, n, 0.3, 1e8, 1.0), 0.3, 1e-8);
}

TEST(ExpectedFastRate, OptimalMatchesKlInverse) {
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const double emp = 0.5 * i / 20.0, u = 2.0 * j / 20.0;
      EXPECT_NEAR(expected_fast_rate_optimal(u * 100.0, 100, emp).value, expected_kl_inverse(u * 100.0, 100, emp), 1e-6);
    }
}

TEST(ExpectedMixedRate, Examples) {
  EXPECT_DOUBLE_EQ(expected_mixed_rate(5.0, 100, 0.0), 0.05);
  EXPECT_GE(expected_mixed_rate(5.0, 100, 0.2) + 1e-12, expected_kl_inverse(5.0, 100, 0.2));
}

TEST(ExpectedMoment, InterpolatingEqualsPureComplexityTerm) {
  const BoundResult r = expected_moment(4.0, 100, {2.0, 1.0}, [](double) { return 0.0; });
  EXPECT_NEAR(r.value, 2.0 * std::sqrt(-std::expm1(-0.04)), 1e-6);
  EXPECT_THROW(expected_moment(4.0, 100, {0.5, 1.0}, [](double) { return 0.0; }), InputError);
}

TEST(ExpectedVariance, VacuousPastKappaThreshold) {
  const double n = 100.0;
  EXPECT_TRUE(expected_variance((std::log(4.0 / 3.0) + 1e-3) * n, 100, 0.1, 1.0).vacuous);
  EXPECT_FALSE(expected_variance(0.26 * n, 100, 0.1, 1.0).vacuous);
  EXPECT_THROW(expected_variance(1.0, 100, 0.1, 0.0), InputError);
}

TEST(CmiBounds, Examples) {
  EXPECT_EQ(cmi_gap_bound(0.0, 10, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(cmi_gap_bound(2.0, 16, 3.0), 3.0 * 0.5);
  EXPECT_EQ(ecmi_gap_bound(0.0, 10, {1.0, 1.0}), 0.0);
  EXPECT_DOUBLE_EQ(ecmi_gap_bound(100.0 / 8.0, 100, {1.0, 1.0}), 1.0);
  // A non-vanishing CMI of 0.069 n keeps the bound above 0.74 LB.
  EXPECT_NEAR(ecmi_gap_bound(0.069 * 500, 500, {2.0, 0.5}), std::sqrt(8.0 * 0.069), 1e-15);
  EXPECT_GT(std::sqrt(8.0 * 0.069), 0.742);
  EXPECT_TRUE(cmi_exceeds_entropy(10.0, 10));
  EXPECT_FALSE(cmi_exceeds_entropy(6.0, 10));
  EXPECT_TRUE(cmi_beats_mi(1.0, 3.0));
  EXPECT_FALSE(cmi_beats_mi(1.1, 3.0));
}

TEST(AggregateSingleLetter, Examples) {
  EXPECT_EQ(aggregate_single_letter(DependencyVector(std::vector<double>(4, 0.0)), 4, AggregateMode::kSqrtEach, kUnitGaussian), 0.0);
  const DependencyVector constant(std::vector<double>(5, 0.3));
  EXPECT_NEAR(aggregate_single_letter(constant, 5, AggregateMode::kSqrtEach, kUnitGaussian),
              aggregate_single_letter(constant, 5, AggregateMode::kMeanThenInvert, kUnitGaussian), 1e-15);
  EXPECT_THROW(aggregate_single_letter(constant, 4, AggregateMode::kSqrtEach, kUnitGaussian), InputError);
  EXPECT_THROW(DependencyVector({0.1, -0.1}), InputError);
}

TEST(AggregateSingleLetter, JensenOrdering) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    PhiloxStream rng(808, i);
    const long long n = 1 + static_cast<long long>(rng.below(20));
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = std::exp(6.0 * rng.uniform() - 4.0);
    const DependencyVector dep(v);
    for (const auto& env : {kUnitGaussian, CgfEnvelope::sub_gamma(1.0, 0.7)})
      EXPECT_LE(aggregate_single_letter(dep, n, AggregateMode::kSqrtEach, env),
                aggregate_single_letter(dep, n, AggregateMode::kMeanThenInvert, env) + 1e-12);
  }
}

TEST(WassersteinGap, Examples) {
  const LipschitzGeom g{2.0, 1.0};
  EXPECT_EQ(wasserstein_gap_bound(DependencyVector({0.0}), g, WassersteinVariant::kFull), 0.0);
  EXPECT_DOUBLE_EQ(wasserstein_gap_bound(DependencyVector({0.3}), g, WassersteinVariant::kRsSetting),
                   2.0 * wasserstein_gap_bound(DependencyVector({0.3}), g, WassersteinVariant::kFull));
  EXPECT_DOUBLE_EQ(wasserstein_gap_bound(DependencyVector({0.1, 0.3}), g, WassersteinVariant::kSingleLetter), 0.4);
  EXPECT_THROW(wasserstein_gap_bound(DependencyVector({0.1, 0.3}), g, WassersteinVariant::kFull), InputError);
}

TEST(TvGap, Examples) {
  const LipschitzGeom g{1.0, 3.0};
  EXPECT_EQ(tv_gap_bound(DependencyVector({0.0, 0.0}), g, TvInput::kKl), 0.0);
  EXPECT_DOUBLE_EQ(tv_gap_bound(DependencyVector({kInf}), g, TvInput::kKl), 3.0);
  for (double k : {1e-4, 0.1, 1.0, 10.0, 1e3}) {
    const double v = tv_gap_bound(DependencyVector({k}), g, TvInput::kKl);
    EXPECT_LE(v, 3.0 * std::sqrt(k / 2.0) + 1e-15);
    EXPECT_LE(v, 3.0);
  }
  EXPECT_DOUBLE_EQ(tv_gap_bound(DependencyVector({0.2, 0.4}), g, TvInput::kTv), 0.9);
}

TEST(Sgld, Examples) {
  const long long d = 3;
  const double L = 2.0;
  const double sigma2 = 0.5;
  const double eta = std::sqrt(static_cast<double>(d) * sigma2) / L;  // eta^2 L^2 = d sigma^2
  EXPECT_NEAR(sgld_pensia({{eta, sigma2, 0.0}}, d, L), 1.5 * std::log(2.0), 1e-15);
  std::vector<SgldStep> zero(10, {0.1, 0.1, 0.0});
  EXPECT_EQ(sgld_incoherence(zero, 5, 1.0), 0.0);
  EXPECT_EQ(sgld_two_sample(zero, 5, 1.0), 0.0);
  EXPECT_THROW(sgld_pensia({{0.1, 0.0, 0.0}}, 1, 1.0), InputError);
}

TEST(Sgld, PensiaHarmonicEnvelope) {
  const double L = 1.3, c = 0.4;
  for (long long T : {1LL, 10LL, 100LL, 10000LL}) {
    std::vector<SgldStep> steps;
    for (long long t = 1; t <= T; ++t) steps.push_back({c / static_cast<double>(t), c / static_cast<double>(t), 0.0});
    EXPECT_LE(sgld_pensia(steps, 4, L), L * L * c / 2.0 * (1.0 + std::log(static_cast<double>(T))));
  }
}

TEST(GapBounds, ZeroAtZeroDependencyAndMonotone) {
  EXPECT_EQ(expected_kl_inverse(0.0, 10, 0.2), 0.2);
  double prev = 0.0;
  for (double mi = 0.0; mi < 50.0; mi += 2.5) {
    const double v = cmi_gap_bound(mi, 100, 1.0) + mi_gap_bound(mi, 100, kUnitGaussian);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

}  // namespace
}  // namespace genbound
