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

// Acceptance runner: one PASS/FAIL line per criterion.
// Usage: acceptance <path-to-genbound-cli> <golden-dir> <scratch-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "genbound/expected_bounds.hpp"
#include "genbound/figures.hpp"
#include "genbound/io/csv.hpp"
#include "genbound/measures.hpp"
#include "genbound/oracles.hpp"
#include "genbound/parallel.hpp"
#include "genbound/pb_bounded.hpp"
#include "genbound/pb_unbounded.hpp"
#include "genbound/privacy_bounds.hpp"
#include "genbound/rng.hpp"

namespace fs = std::filesystem;
using namespace genbound;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
};

std::string cli_path, golden_dir, scratch_dir;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double slope_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

io::ParsedCsv read_csv(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  return io::parse_csv(in);
}

io::ParsedCsv run_figure(const std::string& name) {
  const fs::path dir = fs::path(scratch_dir) / "figures";
  fs::create_directories(dir);
  const std::string cmd = "\"" + cli_path + "\" figure " + name + " --out \"" + dir.string() + "\" > /dev/null";
  if (std::system(cmd.c_str()) != 0) throw std::runtime_error("figure command failed: " + cmd);
  return read_csv(dir / (name + ".csv"));
}

std::vector<double> numbers(const io::ParsedCsv& t, const std::string& col, const std::string& sweep) {
  const std::size_t c = t.column(col), s = t.column("sweep");
  std::vector<double> out;
  for (const auto& row : t.rows)
    if (row[s] == sweep) out.push_back(std::strtod(row[c].c_str(), nullptr));
  return out;
}

// Largest relative deviation between two tables with the same shape; NaN must match NaN.
double max_rel_diff(const io::ParsedCsv& a, const io::ParsedCsv& b, std::string& where) {
  if (a.header != b.header || a.rows.size() != b.rows.size()) {
    where = "shape mismatch";
    return kInf;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    for (std::size_t j = 0; j < a.header.size(); ++j) {
      if (a.header[j] == "sweep") {
        if (a.rows[i][j] != b.rows[i][j]) {
          where = "sweep label row " + std::to_string(i);
          return kInf;
        }
        continue;
      }
      const double x = std::strtod(a.rows[i][j].c_str(), nullptr);
      const double y = std::strtod(b.rows[i][j].c_str(), nullptr);
      if (std::isnan(x) || std::isnan(y)) {
        if (std::isnan(x) != std::isnan(y)) {
          where = a.header[j] + " row " + std::to_string(i) + " NaN mismatch";
          return kInf;
        }
        continue;
      }
      const double d = std::abs(x - y) / std::max(std::abs(y), 1e-300);
      if (d > worst && std::abs(x - y) > 1e-15) {
        worst = d;
        where = a.header[j] + " row " + std::to_string(i);
      }
    }
  return worst;
}

// ---- 1 and 2 share the PAC-Bayes grid.
template <class Fn>
void pac_bayes_grid(Fn&& fn) {
  const double betas[] = {0.5, 0.1, 0.05, 0.01, 0.001};
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j)
      for (double beta : betas) {
        BoundContext c;
        c.n = 1000;
        c.beta = beta;
        c.emp_risk = 0.5 * i / 19.0;
        c.dependency = 2.0 * j / 19.0 * static_cast<double>(c.n);
        fn(c);
      }
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double d_fast = 0.0, d_catoni = 0.0;
  pac_bayes_grid([&](const BoundContext& c) {
    const double sl = seeger_langford(c).value;
    d_fast = std::max(d_fast, std::abs(sl - fast_rate_optimal(c).value));
    d_catoni = std::max(d_catoni, std::abs(sl - catoni_uniform(c).value));
  });
  const double secs = seconds_since(t0);
  o.pass = d_fast <= 1e-6 && d_catoni <= 1e-6 && secs < 30.0;
  o.note << "max|kl_inv - fast_rate_opt| = " << d_fast << ", max|kl_inv - min_lambda catoni| = " << d_catoni
         << " (tol 1e-6), 2000 points, " << secs << " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  long long violations = 0;
  pac_bayes_grid([&](const BoundContext& c) {
    const double fr = fast_rate_optimal(c).value, mr = mixed_rate(c).value;
    const double th = thiemann(c).value, rv = rivasplata(c).value;
    if (fr > mr + 1e-9) ++violations;
    if (mr > th + 1e-9) ++violations;
    if (mr > rv + 1e-9) ++violations;
  });
  o.pass = violations == 0;
  o.note << violations << " violations of fast_rate_opt <= mixed <= thiemann, mixed <= rivasplata (slack 1e-9)";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst_z = 0.0;
  for (long long d : {1LL, 250LL})
    for (long long n : {2LL, 10LL, 100LL}) {
      GlmSpec s;
      s.d = d;
      s.n = n;
      const McEstimate mc = glm_mc_gen(s, 1'000'000, 20260000 + 1000 * d + n);
      const double z = std::abs(mc.estimate - glm_exact_gen(s)) / mc.std_error;
      worst_z = std::max(worst_z, z);
    }
  std::vector<double> ns, exact1, exact250, mi;
  for (long long n : detail::integer_grid(2, 10000, 60)) {
    GlmSpec s;
    s.n = n;
    ns.push_back(static_cast<double>(n));
    s.d = 1;
    exact1.push_back(glm_exact_gen(s));
    mi.push_back(glm_single_letter_mi_bound(s));
    s.d = 250;
    exact250.push_back(glm_exact_gen(s));
  }
  const double s1 = slope_loglog(ns, exact1), s250 = slope_loglog(ns, exact250), smi = slope_loglog(ns, mi);
  const double secs = seconds_since(t0);
  o.pass = worst_z <= 3.0 && s1 >= -1.1 && s1 <= -0.9 && s250 >= -1.1 && s250 <= -0.9 && smi >= -0.6 && smi <= -0.4 &&
           secs < 300.0;
  o.note << "max |MC - exact| / SE = " << worst_z << " (<= 3, 1e6 reps); slopes exact d=1 " << s1 << ", d=250 " << s250
         << " in [-1.1,-0.9]; MI bound " << smi << " in [-0.6,-0.4]; " << secs << " s";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst_margin = kInf, min_pe = kInf, max_err = 0.0;
  for (long long n : {1LL, 2LL, 5LL, 10LL, 20LL, 50LL}) {
    GdCounterexampleSpec s;
    s.n = n;
    s.seed = 4040 + static_cast<std::uint64_t>(n);
    const GdReport r = gd_counterexample_run(s, 100000);
    // One-sided: the estimate may sit below the floor by at most 3 SE.
    const double margin = (r.mean_gen + 3.0 * r.mean_gen_std_error - r.khintchine_lb) / r.khintchine_lb;
    worst_margin = std::min(worst_margin, margin);
    min_pe = std::min(min_pe, r.p_event_E);
    max_err = std::max(max_err, r.decode_error_given_E);
  }
  const double secs = seconds_since(t0);
  o.pass = worst_margin >= 0.0 && min_pe >= 0.1 && max_err == 0.0 && secs < 120.0;
  o.note << "min (mean_gen + 3SE - 1/sqrt(2n)) / floor = " << worst_margin << " (>= 0); min P[E] = " << min_pe
         << " (>= 0.1); max decoder error | E = " << max_err << " (== 0); 1e5 reps, " << secs << " s";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::vector<double> diffs(500);
  parallel_for(diffs.size(), [&](std::size_t i) {
    PhiloxStream rng(5005, i);
    const double r = rng.uniform();
    const double budget = 2.0 * rng.uniform();
    diffs[i] = std::abs(kl_inverse_upper(r, budget) - kl_inverse_brute(r, budget, 1'000'000));
  });
  const double worst = *std::max_element(diffs.begin(), diffs.end());
  double worst_closed = 0.0;
  for (double c : spaced(1e-6, 50.0, 200, true))
    worst_closed = std::max(worst_closed, std::abs(kl_inverse_upper(0.0, c) - -std::expm1(-c)));
  o.pass = worst <= 2e-6 && worst_closed <= 1e-12;
  o.note << "max |bisection - 1e6 grid| = " << worst << " (tol 2e-6, 500 pairs); max |kl_inv(0,c) - (1-e^-c)| = "
         << worst_closed << " (tol 1e-12)";
  return o;
}

Outcome criterion6() {
  Outcome o;
  long long violations = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const MixtureCase c = random_mixture_case(6006, i);
    const MixtureKl m = mixture_kl_bounds(c.p, c.mix);
    if (m.exact > m.log_sum_exp_bound + 1e-12 * std::max(1.0, m.log_sum_exp_bound)) ++violations;
    if (m.log_sum_exp_bound > m.min_bound + 1e-12 * std::max(1.0, m.min_bound)) ++violations;
  }
  // Every component equal to P: all three quantities vanish.
  double collapse = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const MixtureCase c = random_mixture_case(6007, i);
    const std::size_t k = c.mix.components.size();
    const MixtureSpec same(std::vector<DiscreteDist>(k, c.p), c.mix.weights);
    const MixtureKl single = mixture_kl_bounds(c.p, MixtureSpec({c.p}, {1.0}));
    const MixtureKl m = mixture_kl_bounds(c.p, same);
    const double lse_gap = std::abs(m.log_sum_exp_bound - m.exact);
    collapse = std::max({collapse, std::abs(single.exact), std::abs(single.log_sum_exp_bound),
                         std::abs(single.min_bound), lse_gap, std::abs(m.exact)});
  }
  o.pass = violations == 0 && collapse <= 1e-12;
  o.note << violations << " violations of exact <= lse <= min over 1000 mixtures; max deviation at collapse = "
         << collapse;
  return o;
}

Outcome criterion7() {
  Outcome o;
  long long bad_types = 0, bad_recursion = 0;
  for (long long Z = 1; Z <= 6; ++Z)
    for (long long n = 0; n <= 12; ++n)
      if (BigInt(types_enumerate(Z, n)) != binomial(n + Z - 1, Z - 1)) ++bad_types;
  for (long long k = 2; k <= 6; ++k)
    for (long long t = 1; t <= 50; ++t) {
      BigInt sum = 0;
      for (long long j = 1; j <= t; ++j) sum += simplex_cover_count(k - 1, j).exact;
      if (sum != simplex_cover_count(k, t).exact) ++bad_recursion;
    }
  const BigInt s24 = simplex_cover_count(2, 4).exact;
  o.pass = bad_types == 0 && bad_recursion == 0 && s24 == 10;
  o.note << bad_types << " type-count mismatches (Z<=6, n<=12); " << bad_recursion
         << " recursion mismatches (k<=6, t<=50); S_2(4) = " << s24;
  return o;
}

bool non_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] + 1e-12) return false;
  return true;
}

Outcome criterion8() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const io::ParsedCsv pb = run_figure("dp_pacbayes");
  const io::ParsedCsv ex = run_figure("dp_expected");

  // Cover bound below the simple bound wherever eps <= 1/e.
  long long cover_bad = 0, cover_rows = 0;
  for (const std::string sweep : {"n", "eps"}) {
    const auto eps = numbers(pb, "eps", sweep), simple = numbers(pb, "kl_simple", sweep), cover = numbers(pb, "kl_cover", sweep);
    for (std::size_t i = 0; i < eps.size(); ++i)
      if (eps[i] <= 1.0 / kE) {
        ++cover_rows;
        if (!(cover[i] < simple[i])) ++cover_bad;
      }
  }
  const auto simplex_n = numbers(pb, "kl_simplex", "n"), simple_n = numbers(pb, "kl_simple", "n");
  const bool simplex_drops = simplex_n.back() < simple_n.back();
  const bool monotone = non_increasing(numbers(pb, "pb_simple", "n")) && non_increasing(numbers(pb, "pb_cover", "n")) &&
                        non_increasing(numbers(pb, "pb_simplex", "n"));

  auto best = [&](std::size_t i, std::initializer_list<const char*> cols) {
    double m = kInf;
    for (const char* c : cols) {
      const double v = numbers(ex, c, "n")[i];
      if (!std::isnan(v)) m = std::min(m, v);
    }
    return m;
  };
  const std::size_t last = numbers(ex, "n", "n").size() - 1;
  const std::initializer_list<const char*> types = {"types_simple", "types_cover", "types_simplex", "types_typical"};
  const std::initializer_list<const char*> base = {"max_info", "bun", "stability"};
  const bool small_n_baselines = best(0, base) < best(0, types);
  const bool large_n_types = best(last, types) < best(last, base);

  std::string w1, w2;
  const double g1 = max_rel_diff(pb, read_csv(fs::path(golden_dir) / "dp_pacbayes.csv"), w1);
  const double g2 = max_rel_diff(ex, read_csv(fs::path(golden_dir) / "dp_expected.csv"), w2);
  const double secs = seconds_since(t0);
  o.pass = cover_bad == 0 && cover_rows > 0 && simplex_drops && monotone && small_n_baselines && large_n_types &&
           g1 <= 1e-9 && g2 <= 1e-9 && secs < 60.0;
  o.note << "cover < simple on " << (cover_rows - cover_bad) << "/" << cover_rows << " rows with eps <= 1/e; simplex below simple at n_max: "
         << (simplex_drops ? "yes" : "no") << "; PAC-Bayes non-increasing in n: " << (monotone ? "yes" : "no")
         << "; baselines tighter at n=1: " << (small_n_baselines ? "yes" : "no") << "; types tighter at n=1e4: "
         << (large_n_types ? "yes" : "no") << "; golden max rel diff " << g1 << ", " << g2 << " (tol 1e-9); " << secs
         << " s";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const io::ParsedCsv fig = run_figure("variance_bounds");
  const io::ParsedCsv gold = read_csv(fs::path(golden_dir) / "variance_bounds.csv");
  const std::vector<std::string> curves{"baseline_chebyshev", "baseline_chebyshev_root", "baseline_quadratic", "relaxation",
                                        "reference"};
  auto caption = [](const io::ParsedCsv& t) {
    for (const auto& row : t.rows)
      if (row[t.column("sweep")] == "caption") return row;
    throw std::runtime_error("no caption row");
  };
  const auto a = caption(fig), b = caption(gold);
  int identical = 0;
  for (const auto& c : curves)
    if (a[fig.column(c)] == b[gold.column(c)]) ++identical;
  std::ostringstream wins;
  bool every_sweep = true;
  for (const std::string sweep : {"beta", "chi2", "emp", "n"}) {
    const auto r = numbers(fig, "relaxation", sweep), c1 = numbers(fig, "baseline_chebyshev", sweep),
               c2 = numbers(fig, "baseline_chebyshev_root", sweep), c3 = numbers(fig, "baseline_quadratic", sweep);
    int count = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] < std::min({c1[i], c2[i], c3[i]})) ++count;
    every_sweep = every_sweep && count > 0;
    wins << " " << sweep << "=" << count << "/" << r.size();
  }
  o.pass = identical == 5 && every_sweep;
  o.note << identical << "/5 caption values byte-identical to golden (relaxation " << a[fig.column("relaxation")]
         << "); cells where the relaxation beats every baseline:" << wins.str();
  return o;
}

Outcome criterion10() {
  Outcome o;
  double worst = 0.0;
  long long linearized_wins = 0, cases = 0;
  auto close = [&](double x, double y) {
    if (std::isinf(x) && std::isinf(y)) return;
    worst = std::max(worst, std::abs(x - y) / std::max(1.0, std::abs(y)));
  };
  const std::vector<CgfEnvelope> envs{CgfEnvelope::sub_gaussian(1.0), CgfEnvelope::sub_gaussian(0.3),
                                      CgfEnvelope::sub_gamma(1.0, 0.5), CgfEnvelope::sub_exponential(2.0, 1.5)};
  for (const auto& env : envs)
    for (long long n : {1LL, 10LL, 100LL, 1000LL, 100000LL})
      for (double dep : {0.0, 0.3, 2.0, 17.5, 250.0, 5000.0})
        for (double beta : {0.5, 0.05, 1e-4}) {
          BoundContext c;
          c.n = n;
          c.dependency = dep;
          c.beta = beta;
          ++cases;
          for (UnionMode mode : {UnionMode::kLinear, UnionMode::kGeometric})
            close(event_space_optimize(chernoff_cutoff_events(c, env, 7.0, mode)).value,
                  chernoff_analogue_cutoff(c, env, 7.0, mode).value);
          const OpenChernoff open = chernoff_analogue_open(c, env);
          close(event_space_optimize(chernoff_open_events(c, env)).value, open.exact.value);
          if (open.linearized.value < open.exact.value) ++linearized_wins;
          for (double v : {0.0, 0.5, 4.0, 1e3})
            close(event_space_optimize(martingale_events(c, v, 9.0)).value, martingale_second_moment(c, v, 9.0).value);
        }
  o.pass = worst <= 1e-12 && linearized_wins == 0;
  o.note << "max relative gap engine vs closed form = " << worst << " (tol 1e-12) over " << cases
         << " contexts x 4 envelopes; open linearized form below exact in " << linearized_wins << " cases";
  return o;
}

Outcome criterion11() {
  Outcome o;
  long long failures = 0;
  double worst_inv = 0.0;
  std::map<std::string, long long> by_kind;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    PhiloxStream rng(1111, i);
    const std::size_t k = 2 + rng.below(7);
    auto draw = [&](bool allow_zero) {
      std::vector<double> v(k);
      double s = 0.0;
      for (auto& x : v) {
        x = -std::log(rng.uniform());
        if (allow_zero && rng.uniform() < 0.15) x = 0.0;
        s += x;
      }
      if (s == 0.0) v[0] = s = 1.0;
      for (auto& x : v) x /= s;
      return DiscreteDist(v);
    };
    const DiscreteDist p = draw(true), q = draw(i % 4 == 0);
    const double kl = kl_discrete(p, q), tv = tv_discrete(p, q), chi2 = chi2_discrete(p, q);
    const double rinf = renyi_inf_discrete(p, q);
    auto fail = [&](const std::string& what) {
      ++failures;
      ++by_kind[what];
    };
    if (!(kl >= 0.0 && tv >= 0.0 && chi2 >= 0.0 && rinf >= 0.0)) fail("non-negativity");
    if (!(kl <= std::log1p(chi2) + 1e-12)) fail("kl <= ln(1+chi2)");
    if (!(std::log1p(chi2) <= chi2 + 1e-12)) fail("ln(1+chi2) <= chi2");
    if (!(tv <= tv_from_kl(kl) + 1e-12)) fail("tv <= psi(kl)");
    if (!(tv_from_kl(kl) <= 1.0)) fail("psi <= 1");

    const double s2 = std::exp(4.0 * rng.uniform() - 2.0);
    const double c = std::exp(4.0 * rng.uniform() - 2.0);
    const double z = std::exp(std::log(1e-4) + rng.uniform() * (std::log(10.0) - std::log(1e-4)));
    const CgfEnvelope env = i % 3 == 0   ? CgfEnvelope::sub_gaussian(s2)
                            : i % 3 == 1 ? CgfEnvelope::sub_gamma(s2, c)
                                         : CgfEnvelope::sub_exponential(s2, c);
    const double closed = psi_star_inverse(env, z), numeric = psi_star_inverse_numeric(env, z);
    const double rel = std::abs(closed - numeric) / closed;
    worst_inv = std::max(worst_inv, rel);
    if (!(rel <= 1e-6)) fail("closed vs numeric psi*^-1");
  }
  o.pass = failures == 0;
  o.note << failures << " failures in 10000 random cases; max rel |closed - numeric psi*^-1| = " << worst_inv;
  for (const auto& [k, v] : by_kind) o.note << "; " << k << ": " << v;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance <genbound-cli> <golden-dir> <scratch-dir>\n";
    return 2;
  }
  cli_path = argv[1];
  golden_dir = argv[2];
  scratch_dir = argv[3];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"bounded PAC-Bayes equivalence", criterion1},
      {"bounded PAC-Bayes dominance", criterion2},
      {"Gaussian location model", criterion3},
      {"GD counterexample", criterion4},
      {"kl inversion oracle", criterion5},
      {"mixture KL inequalities", criterion6},
      {"type and cover combinatorics", criterion7},
      {"DP figures", criterion8},
      {"variance figure", criterion9},
      {"event-space engine consistency", criterion10},
      {"divergence and CGF properties", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << "exception: " << e.what();
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << " [" << criteria[i].first
              << "] " << o.note.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
