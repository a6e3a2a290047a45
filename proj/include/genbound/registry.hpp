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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "genbound/cgf.hpp"
#include "genbound/expected_bounds.hpp"
#include "genbound/io/config.hpp"
#include "genbound/measures.hpp"
#include "genbound/oracles.hpp"
#include "genbound/pb_bounded.hpp"
#include "genbound/pb_unbounded.hpp"
#include "genbound/privacy_bounds.hpp"

namespace genbound {

// Parameters arrive as a flat key -> number/string view of a config table.
class Params {
 public:
  Params(const io::Config& cfg, std::string prefix) : cfg_(cfg), prefix_(std::move(prefix)) {}

  double num(const std::string& k) const { return cfg_.get_double(prefix_ + k); }
  double num(const std::string& k, double fallback) const { return cfg_.get_double(prefix_ + k, fallback); }
  long long integer(const std::string& k) const { return cfg_.get_int(prefix_ + k); }
  long long integer(const std::string& k, long long fallback) const { return cfg_.get_int(prefix_ + k, fallback); }
  std::string str(const std::string& k, const std::string& fallback) const { return cfg_.get_string(prefix_ + k, fallback); }
  bool has(const std::string& k) const { return cfg_.has(prefix_ + k); }

  BoundContext context() const {
    BoundContext ctx;
    ctx.n = integer("n");
    ctx.beta = num("beta", 0.05);
    ctx.dependency = num("dependency", 0.0);
    ctx.emp_risk = num("emp_risk", 0.0);
    ctx.range_b = num("range_b", 1.0);
    const std::string xi = str("xi", "conservative");
    require(xi == "conservative" || xi == "tight", "xi must be conservative or tight");
    ctx.xi = xi == "tight" ? XiMode::kTight : XiMode::kConservative;
    ctx.validate();
    return ctx;
  }

  CgfEnvelope envelope() const {
    const std::string kind = str("cgf", "sub_gaussian");
    if (kind == "sub_gaussian") return CgfEnvelope::sub_gaussian(num("sigma2", 1.0));
    if (kind == "sub_gamma") return CgfEnvelope::sub_gamma(num("sigma2", 1.0), num("c"));
    if (kind == "sub_exponential") return CgfEnvelope::sub_exponential(num("sigma2", 1.0), num("c"));
    throw InputError("cgf must be sub_gaussian, sub_gamma or sub_exponential");
  }

  PrivacyParams privacy() const {
    const std::string kind = str("privacy", "pure_dp");
    if (kind == "pure_dp") return PrivacyParams::pure_dp(num("eps"));
    if (kind == "gdp") return PrivacyParams::gdp(num("mu"));
    throw InputError("privacy must be pure_dp or gdp");
  }

  // Truncated empirical risk; without a table the loss is taken as bounded
  // by the truncation level, so trunc(t) = min(emp_risk, t).
  TruncatedEmp truncated() const {
    const double emp = num("emp_risk", 0.0);
    return [emp](double t) { return std::min(emp, t); };
  }

  PrivacyTarget target() const {
    const std::string kind = str("target", "small_kl");
    if (kind == "small_kl") return PrivacyTarget::small_kl();
    if (kind == "fast_rate") return PrivacyTarget::fast_rate();
    if (kind == "chernoff") return PrivacyTarget::chernoff(envelope());
    if (kind == "moment") return PrivacyTarget::moment({num("p", 2.0), num("m_p", 1.0)}, truncated());
    throw InputError("target must be small_kl, fast_rate, chernoff or moment");
  }

 private:
  const io::Config& cfg_;
  std::string prefix_;
};

using Operation = std::function<BoundResult(const Params&)>;

inline BoundResult scalar(double v, std::string regime = "closed_form") {
  BoundResult r;
  r.value = v;
  r.regime = std::move(regime);
  r.vacuous = !std::isfinite(v);
  return r;
}

inline const std::map<std::string, Operation>& operations() {
  static const std::map<std::string, Operation> ops = [] {
    std::map<std::string, Operation> m;
    // Bounded-loss PAC-Bayes.
    m["seeger_langford"] = [](const Params& p) { return seeger_langford(p.context()); };
    m["mcallester"] = [](const Params& p) { return mcallester(p.context()); };
    m["catoni"] = [](const Params& p) {
      return catoni(p.context(), p.num("lambda"), p.str("budget", "plain") == "uniform" ? CatoniBudget::kUniform : CatoniBudget::kPlain);
    };
    m["catoni_uniform"] = [](const Params& p) { return catoni_uniform(p.context()); };
    m["fast_rate"] = [](const Params& p) { return fast_rate(p.context(), p.num("gamma"), p.num("c")); };
    m["fast_rate_optimal"] = [](const Params& p) { return fast_rate_optimal(p.context()); };
    m["mixed_rate"] = [](const Params& p) { return mixed_rate(p.context()); };
    m["thiemann"] = [](const Params& p) { return thiemann(p.context()); };
    m["rivasplata"] = [](const Params& p) { return rivasplata(p.context()); };
    m["kl_inverse_upper"] = [](const Params& p) { return scalar(kl_inverse_upper(p.num("r_hat"), p.num("budget"))); };
    // Unbounded losses.
    m["psi_star_inverse"] = [](const Params& p) { return scalar(psi_star_inverse(p.envelope(), p.num("z"))); };
    m["banerjee"] = [](const Params& p) { return scalar(banerjee(p.context(), p.envelope(), p.num("lambda"))); };
    m["chernoff_analogue_cutoff"] = [](const Params& p) {
      return chernoff_analogue_cutoff(p.context(), p.envelope(), p.num("cap", kInf),
                                      p.str("union", "linear") == "geometric" ? UnionMode::kGeometric : UnionMode::kLinear);
    };
    m["chernoff_analogue_open"] = [](const Params& p) {
      const OpenChernoff o = chernoff_analogue_open(p.context(), p.envelope());
      return p.str("form", "exact") == "linearized" ? o.linearized : o.exact;
    };
    m["truncation_moment_bound"] = [](const Params& p) {
      const std::string v = p.str("variant", "adaptive");
      const TruncationVariant tv = v == "fixed_lambda"   ? TruncationVariant::kFixedLambda
                                   : v == "simultaneous" ? TruncationVariant::kSimultaneous
                                                         : TruncationVariant::kAdaptive;
      return truncation_moment_bound(p.context(), {p.num("p", 2.0), p.num("m_p", 1.0)}, p.truncated(), tv);
    };
    m["bounded_variance_bound"] = [](const Params& p) { return bounded_variance_bound(p.context(), p.num("sigma2")); };
    m["variance_relaxation_chi2"] = [](const Params& p) { return variance_relaxation_chi2(p.context(), p.num("sigma2")); };
    m["martingale_second_moment"] = [](const Params& p) {
      return martingale_second_moment(p.context(), p.num("variance_proxy"), p.num("cap", kInf));
    };
    // Expected generalization.
    m["mi_gap_bound"] = [](const Params& p) { return scalar(mi_gap_bound(p.num("mi"), p.integer("n"), p.envelope())); };
    m["expected_kl_inverse"] = [](const Params& p) { return scalar(expected_kl_inverse(p.num("mi"), p.integer("n"), p.num("emp_risk"))); };
    m["expected_fast_rate_optimal"] = [](const Params& p) { return expected_fast_rate_optimal(p.num("mi"), p.integer("n"), p.num("emp_risk")); };
    m["expected_mixed_rate"] = [](const Params& p) { return scalar(expected_mixed_rate(p.num("mi"), p.integer("n"), p.num("emp_risk"))); };
    m["expected_variance"] = [](const Params& p) { return expected_variance(p.num("mi"), p.integer("n"), p.num("emp_risk"), p.num("sigma2")); };
    m["cmi_gap_bound"] = [](const Params& p) { return scalar(cmi_gap_bound(p.num("cmi"), p.integer("n"), p.num("range", 1.0))); };
    m["ecmi_gap_bound"] = [](const Params& p) {
      return scalar(ecmi_gap_bound(p.num("ecmi"), p.integer("n"), {p.num("L", 1.0), p.num("B", 1.0)}));
    };
    // Privacy.
    m["maximal_leakage_bound"] = [](const Params& p) { return maximal_leakage_bound(p.context(), p.num("leakage"), p.target()); };
    m["dp_naive_bounds"] = [](const Params& p) { return dp_naive_bounds(p.num("eps"), p.context(), p.target()); };
    m["group_kl"] = [](const Params& p) {
      const GroupKl g = group_kl(p.privacy(), p.integer("k"));
      BoundResult r = scalar(g.value, "group_kl");
      if (std::isfinite(g.quadratic)) r.params["quadratic"] = g.quadratic;
      if (std::isfinite(g.linear)) r.params["linear"] = g.linear;
      return r;
    };
    m["type_count"] = [](const Params& p) {
      const BigInt c = type_count(AlphabetSpec(p.integer("Z")), p.integer("n"));
      BoundResult r = scalar(log_big(c), "log_count");
      if (c < BigInt(1) << 53) r.params["count"] = c.convert_to<double>();
      return r;
    };
    m["simple_type_bound"] = [](const Params& p) { return scalar(simple_type_bound(AlphabetSpec(p.integer("Z")), p.integer("n"))); };
    m["simplex_cover_count"] = [](const Params& p) {
      const SimplexCover s = simplex_cover_count(p.integer("k"), p.integer("t"));
      BoundResult r = scalar(s.exact.convert_to<double>(), "exact");
      r.params["upper"] = s.upper;
      return r;
    };
    m["dp_cover_bound"] = [](const Params& p) { return dp_cover_bound(p.privacy(), AlphabetSpec(p.integer("Z")), p.integer("n")); };
    m["dp_cover_bound_simplex"] = [](const Params& p) {
      return dp_cover_bound_simplex(p.privacy(), AlphabetSpec(p.integer("Z")), p.integer("n"));
    };
    m["typical_set_mi_bound"] = [](const Params& p) { return typical_set_mi_bound(p.privacy(), AlphabetSpec(p.integer("Z")), p.integer("n")); };
    m["dp_literature_baselines"] = [](const Params& p) {
      const DpBaselines b = dp_literature_baselines(p.num("eps"), p.integer("n"), p.num("L_prime", 1.0), p.num("beta", 0.05));
      BoundResult r = scalar(b.dwork_gap, "dwork_gap");
      r.params = b.as_map();
      return r;
    };
    // Gaussian location model closed forms.
    m["glm_exact_gen"] = [](const Params& p) {
      GlmSpec s{p.integer("d", 1), p.num("sigma2", 1.0), p.integer("n"), {}};
      return scalar(glm_exact_gen(s));
    };
    m["glm_single_letter_mi"] = [](const Params& p) {
      GlmSpec s{p.integer("d", 1), p.num("sigma2", 1.0), p.integer("n"), {}};
      return scalar(glm_single_letter_mi(s));
    };
    return m;
  }();
  return ops;
}

}  // namespace genbound
