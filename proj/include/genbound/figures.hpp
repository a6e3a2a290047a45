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
#include <map>
#include <string>
#include <vector>

#include "genbound/expected_bounds.hpp"
#include "genbound/io/config.hpp"
#include "genbound/io/csv.hpp"
#include "genbound/io/svg.hpp"
#include "genbound/oracles.hpp"
#include "genbound/pb_bounded.hpp"
#include "genbound/pb_unbounded.hpp"
#include "genbound/privacy_bounds.hpp"

namespace genbound {

struct FigureOutput {
  io::CsvTable table{{}};
  std::vector<std::pair<std::string, io::LineChart>> charts;  // file stem -> chart
};

namespace detail {

// Integer grid: log-spaced points rounded to the nearest integer, deduplicated.
inline std::vector<long long> integer_grid(long long lo, long long hi, int points) {
  std::vector<long long> out;
  for (double v : spaced(static_cast<double>(lo), static_cast<double>(hi), points, true)) {
    const long long k = std::llround(v);
    if (out.empty() || k != out.back()) out.push_back(k);
  }
  return out;
}

inline std::vector<double> column(const io::CsvTable& t, const std::string& name, const std::string& sweep) {
  std::size_t c = 0, s = 0;
  for (std::size_t i = 0; i < t.header().size(); ++i) {
    if (t.header()[i] == name) c = i;
    if (t.header()[i] == "sweep") s = i;
  }
  std::vector<double> out;
  for (const auto& row : t.rows())
    if (row[s] == sweep) out.push_back(std::strtod(row[c].c_str(), nullptr));
  return out;
}

inline io::LineChart chart_from(const io::CsvTable& t, const std::string& sweep, const std::string& title,
                                const std::string& x_label, const std::vector<std::string>& columns, bool log_x,
                                bool log_y, double y_floor = -kInf) {
  io::LineChart chart;
  chart.title = title;
  chart.x_label = x_label;
  chart.y_label = "bound";
  chart.log_x = log_x;
  chart.log_y = log_y;
  chart.y_floor = y_floor;
  const auto xs = column(t, "x", sweep);
  for (const auto& c : columns) chart.series.push_back({c, xs, column(t, c, sweep)});
  return chart;
}

}  // namespace detail

// ---- Variance-bound comparison: chi^2-relaxed bound against three baselines.

struct VariancePoint {
  double beta = 0.025, chi2 = 200.0, emp = 0.025, sigma2 = 1.0;
  long long n = 10000;
};

struct VarianceRow {
  double chebyshev, chebyshev_root, quadratic, relaxation, reference;
};

inline VarianceRow variance_row(const VariancePoint& p) {
  BoundContext ctx;
  ctx.n = p.n;
  ctx.beta = p.beta;
  ctx.dependency = p.chi2;
  ctx.emp_risk = p.emp;
  const Chi2Baselines b = chi2_variance_baselines(ctx, p.sigma2);
  const BoundResult r = variance_relaxation_chi2(ctx, p.sigma2);
  return {b.chebyshev, b.chebyshev_root, b.quadratic, r.value, p.emp};
}

inline FigureOutput figure_variance_bounds(const io::Config& cfg) {
  VariancePoint base;
  base.beta = cfg.get_double("beta", base.beta);
  base.chi2 = cfg.get_double("chi2", base.chi2);
  base.emp = cfg.get_double("emp", base.emp);
  base.sigma2 = cfg.get_double("sigma2", base.sigma2);
  base.n = cfg.get_int("n", base.n);
  const int points = static_cast<int>(cfg.get_int("points", 60));
  FigureOutput out;
  out.table = io::CsvTable({"sweep", "x", "beta", "chi2", "emp", "n", "sigma2", "baseline_chebyshev",
                            "baseline_chebyshev_root", "baseline_quadratic", "relaxation", "reference"});
  auto add = [&](const std::string& sweep, double x, const VariancePoint& p) {
    const VarianceRow r = variance_row(p);
    std::vector<std::string> cells{sweep};
    for (double v : {x, p.beta, p.chi2, p.emp, static_cast<double>(p.n), p.sigma2, r.chebyshev, r.chebyshev_root,
                     r.quadratic, r.relaxation, r.reference})
      cells.push_back(io::format_number(v));
    out.table.add_row(std::move(cells));
  };
  add("caption", 0.0, base);
  for (double x : spaced(1e-4, 0.5, points, true)) {
    VariancePoint p = base;
    p.beta = x;
    add("beta", x, p);
  }
  for (double x : spaced(1.0, 1e4, points, true)) {
    VariancePoint p = base;
    p.chi2 = x;
    add("chi2", x, p);
  }
  for (double x : spaced(0.0, 0.5, points, false)) {
    VariancePoint p = base;
    p.emp = x;
    add("emp", x, p);
  }
  for (long long x : detail::integer_grid(100, 1000000, points)) {
    VariancePoint p = base;
    p.n = x;
    add("n", static_cast<double>(x), p);
  }
  const std::vector<std::string> cols{"baseline_chebyshev", "baseline_chebyshev_root", "baseline_quadratic", "relaxation"};
  out.charts.push_back({"variance_bounds_beta", detail::chart_from(out.table, "beta", "Variance bounds vs beta", "beta", cols, true, true)});
  out.charts.push_back({"variance_bounds_chi2", detail::chart_from(out.table, "chi2", "Variance bounds vs chi^2", "chi^2", cols, true, true)});
  out.charts.push_back({"variance_bounds_emp", detail::chart_from(out.table, "emp", "Variance bounds vs empirical risk", "empirical risk", cols, false, true)});
  out.charts.push_back({"variance_bounds_n", detail::chart_from(out.table, "n", "Variance bounds vs n", "n", cols, true, true)});
  return out;
}

// ---- Privacy: PAC-Bayes (Seeger-Langford) with method-of-types KL bounds.

struct DpPacBayesRow {
  double kl_simple, kl_cover, kl_simplex, pb_simple, pb_cover, pb_simplex;
};

inline DpPacBayesRow dp_pacbayes_row(long long Z, long long n, double eps, double beta, double emp) {
  const AlphabetSpec alpha(Z);
  const PrivacyParams priv = PrivacyParams::pure_dp(eps);
  DpPacBayesRow r{};
  r.kl_simple = simple_type_bound(alpha, n);
  r.kl_cover = dp_cover_bound(priv, alpha, n).value;
  r.kl_simplex = dp_cover_bound_simplex(priv, alpha, n).value;
  auto pb = [&](double kl) {
    BoundContext ctx;
    ctx.n = n;
    ctx.beta = beta;
    ctx.dependency = std::max(kl, 0.0);
    ctx.emp_risk = emp;
    return seeger_langford(ctx).value;
  };
  r.pb_simple = pb(r.kl_simple);
  r.pb_cover = pb(r.kl_cover);
  r.pb_simplex = pb(r.kl_simplex);
  return r;
}

inline FigureOutput figure_dp_pacbayes(const io::Config& cfg) {
  const long long Z = cfg.get_int("Z", 100);
  const double beta = cfg.get_double("beta", 0.05);
  const double emp = cfg.get_double("emp", 0.05);
  const double eps = cfg.get_double("eps", 0.1);
  const long long n_fixed = cfg.get_int("n", 5000);
  const long long n_max = cfg.get_int("n_max", 10000);
  const int points = static_cast<int>(cfg.get_int("points", 100));
  FigureOutput out;
  out.table = io::CsvTable({"sweep", "x", "n", "eps", "kl_simple", "kl_cover", "kl_simplex", "pb_simple", "pb_cover",
                            "pb_simplex", "emp"});
  auto add = [&](const std::string& sweep, double x, long long n, double e) {
    const DpPacBayesRow r = dp_pacbayes_row(Z, n, e, beta, emp);
    std::vector<std::string> cells{sweep};
    for (double v : {x, static_cast<double>(n), e, r.kl_simple, r.kl_cover, r.kl_simplex, r.pb_simple, r.pb_cover, r.pb_simplex, emp})
      cells.push_back(io::format_number(v));
    out.table.add_row(std::move(cells));
  };
  for (long long n : detail::integer_grid(1, n_max, points)) add("n", static_cast<double>(n), n, eps);
  for (double e : spaced(1e-4, 1.0, points, true)) add("eps", e, n_fixed, e);
  const std::vector<std::string> cols{"pb_simple", "pb_cover", "pb_simplex"};
  out.charts.push_back({"dp_pacbayes_n", detail::chart_from(out.table, "n", "PAC-Bayes guarantees for eps-DP vs n", "n", cols, true, false, emp)});
  out.charts.push_back({"dp_pacbayes_eps", detail::chart_from(out.table, "eps", "PAC-Bayes guarantees for eps-DP vs eps", "eps", cols, true, false, emp)});
  return out;
}

// ---- Privacy: expected-risk bounds through the small-kl MI inequality.

struct DpExpectedRow {
  double mi_simple, mi_cover, mi_simplex, mi_typical, mi_max_info, mi_bun;
  double types_simple, types_cover, types_simplex, types_typical, max_info, bun, stability;
};

inline DpExpectedRow dp_expected_row(long long Z, long long n, double eps, double emp) {
  const AlphabetSpec alpha(Z);
  const PrivacyParams priv = PrivacyParams::pure_dp(eps);
  const double nd = static_cast<double>(n);
  DpExpectedRow r{};
  r.mi_simple = simple_type_bound(alpha, n);
  r.mi_cover = dp_cover_bound(priv, alpha, n).value;
  r.mi_simplex = std::max(dp_cover_bound_simplex(priv, alpha, n).value, 0.0);
  r.mi_typical = n >= 2 ? typical_set_mi_bound(priv, alpha, n).value : std::nan("");
  r.mi_max_info = nd * eps;
  r.mi_bun = dp_literature_baselines(eps, n, 1.0, 0.05).bun_mi;
  auto kl_inv = [&](double mi) { return std::isnan(mi) ? mi : expected_kl_inverse(mi, n, emp); };
  r.types_simple = kl_inv(r.mi_simple);
  r.types_cover = kl_inv(r.mi_cover);
  r.types_simplex = kl_inv(r.mi_simplex);
  r.types_typical = kl_inv(r.mi_typical);
  r.max_info = kl_inv(r.mi_max_info);
  r.bun = kl_inv(r.mi_bun);
  r.stability = emp + dp_literature_baselines(eps, n, 1.0, 0.05).stability_gap;
  return r;
}

inline FigureOutput figure_dp_expected(const io::Config& cfg) {
  const long long Z_fixed = cfg.get_int("Z", 100);
  const double emp = cfg.get_double("emp", 0.05);
  const double eps_fixed = cfg.get_double("eps", 0.6);
  const long long n_fixed = cfg.get_int("n", 2500);
  const long long n_max = cfg.get_int("n_max", 10000);
  const long long Z_max = cfg.get_int("Z_max", 1000);
  const double eps_max = cfg.get_double("eps_max", 2.0);
  const int points = static_cast<int>(cfg.get_int("points", 100));
  FigureOutput out;
  out.table = io::CsvTable({"sweep", "x", "n", "eps", "Z", "mi_simple", "mi_cover", "mi_simplex", "mi_typical",
                            "mi_max_info", "mi_bun", "types_simple", "types_cover", "types_simplex", "types_typical",
                            "max_info", "bun", "stability", "emp"});
  auto add = [&](const std::string& sweep, double x, long long Z, long long n, double e) {
    const DpExpectedRow r = dp_expected_row(Z, n, e, emp);
    std::vector<std::string> cells{sweep};
    for (double v : {x, static_cast<double>(n), e, static_cast<double>(Z), r.mi_simple, r.mi_cover, r.mi_simplex,
                     r.mi_typical, r.mi_max_info, r.mi_bun, r.types_simple, r.types_cover, r.types_simplex,
                     r.types_typical, r.max_info, r.bun, r.stability, emp})
      cells.push_back(io::format_number(v));
    out.table.add_row(std::move(cells));
  };
  for (long long n : detail::integer_grid(1, n_max, points)) add("n", static_cast<double>(n), Z_fixed, n, eps_fixed);
  for (double e : spaced(eps_max / points, eps_max, points, false)) add("eps", e, Z_fixed, n_fixed, e);
  for (long long z : detail::integer_grid(2, Z_max, points)) add("Z", static_cast<double>(z), z, n_fixed, eps_fixed);
  const std::vector<std::string> cols{"types_simple", "types_cover", "types_simplex", "types_typical", "max_info", "bun", "stability"};
  out.charts.push_back({"dp_expected_n", detail::chart_from(out.table, "n", "Expected bounds for eps-DP vs n", "n", cols, true, false, emp)});
  out.charts.push_back({"dp_expected_eps", detail::chart_from(out.table, "eps", "Expected bounds for eps-DP vs eps", "eps", cols, false, false, emp)});
  out.charts.push_back({"dp_expected_Z", detail::chart_from(out.table, "Z", "Expected bounds for eps-DP vs |Z|", "|Z|", cols, true, false, emp)});
  return out;
}

// ---- Gaussian location model: exact gap against four bounds.

inline FigureOutput figure_glm_comparison(const io::Config& cfg) {
  const double sigma2 = cfg.get_double("sigma2", 1.0);
  const long long n_max = cfg.get_int("n_max", 10000);
  const int points = static_cast<int>(cfg.get_int("points", 60));
  std::vector<long long> dims{1, 250};
  if (cfg.has("d")) dims = {cfg.get_int("d")};
  FigureOutput out;
  out.table = io::CsvTable({"sweep", "x", "d", "n", "exact_gen", "mi_single_letter", "wasserstein_full",
                            "wasserstein_single_letter", "wasserstein_random_subset"});
  for (long long d : dims) {
    const std::string sweep = "n_d" + std::to_string(d);
    for (long long n : detail::integer_grid(2, n_max, points)) {
      GlmSpec spec;
      spec.d = d;
      spec.sigma2 = sigma2;
      spec.n = n;
      const double mi = d == 1 ? glm_single_letter_mi_bound(spec) : std::nan("");
      std::vector<std::string> cells{sweep};
      for (double v : {static_cast<double>(n), static_cast<double>(d), static_cast<double>(n), glm_exact_gen(spec), mi,
                       glm_wasserstein_terms(spec, GlmWassersteinVariant::kFull),
                       glm_wasserstein_terms(spec, GlmWassersteinVariant::kSingleLetter),
                       glm_wasserstein_terms(spec, GlmWassersteinVariant::kRandomSubset)})
        cells.push_back(io::format_number(v));
      out.table.add_row(std::move(cells));
    }
    const std::vector<std::string> cols{"exact_gen", "mi_single_letter", "wasserstein_full", "wasserstein_single_letter",
                                        "wasserstein_random_subset"};
    out.charts.push_back({"glm_comparison_d" + std::to_string(d),
                          detail::chart_from(out.table, sweep, "Gaussian location model, d = " + std::to_string(d), "n", cols, true, true)});
  }
  return out;
}

inline const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"glm_comparison", "variance_bounds", "dp_pacbayes", "dp_expected"};
  return names;
}

inline FigureOutput make_figure(const std::string& name, const io::Config& cfg) {
  if (name == "glm_comparison") return figure_glm_comparison(cfg);
  if (name == "variance_bounds") return figure_variance_bounds(cfg);
  if (name == "dp_pacbayes") return figure_dp_pacbayes(cfg);
  if (name == "dp_expected") return figure_dp_expected(cfg);
  throw InputError("unknown figure: " + name);
}

}  // namespace genbound
